#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kalpha/bootstrap.hpp"

namespace kalpha {

// Y_ij = mu + tau_i + eps_ij, tau_i ~ N(0, sigma_tau^2),
// eps_ij ~ N(0, sigma_eps^2), cells blanked independently (MCAR).
struct AnovaConfig {
  double mu = 0.0;
  double sigma_tau = 1.0;
  double sigma_eps = 1.0;
  std::size_t n_units = 100;
  std::size_t n_coders = 4;
  double missing_rate = 0.0;

  // Throws Error(InvalidArgument) when an invariant fails.
  void validate() const;
};

double true_alpha(const AnovaConfig& cfg);

ReliabilityMatrix gen_anova(const AnovaConfig& cfg, std::uint64_t seed);

struct CoverageRep {
  double alpha_hat = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  bool hit = false;
};

struct CoverageReport {
  std::size_t reps = 0;
  std::size_t hits = 0;
  double coverage = 0.0;
  double mean_ci_width = 0.0;
  double true_alpha = 0.0;
  std::vector<CoverageRep> per_rep;
};

// Each rep generates a matrix, fits with the interval distance, bootstraps a
// conf_level interval and checks whether it covers true_alpha. The master
// seed is bcfg.seed; bcfg.workers parallelizes across reps. Fit errors are
// rethrown with the rep index in the message.
CoverageReport run_coverage(const AnovaConfig& cfg, std::size_t reps,
                            const BootstrapConfig& bcfg);

}  // namespace kalpha
