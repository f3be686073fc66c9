#include "kalpha/simulate.hpp"

#include <cmath>
#include <string>

#include "kalpha/error.hpp"
#include "kalpha/parallel.hpp"
#include "kalpha/rng.hpp"

namespace kalpha {

namespace {

// Lane reserved for data generation; bootstrap redraw lanes count up from 0.
constexpr std::uint32_t kGenerateLane = 0xFFFFFFFFu;

std::uint64_t rep_seed(std::uint64_t master, std::size_t rep) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(rep)));
}

}  // namespace

void AnovaConfig::validate() const {
  if (!std::isfinite(mu)) throw Error(ErrorCode::InvalidArgument, "mu must be finite");
  if (!(sigma_tau >= 0.0) || !std::isfinite(sigma_tau)) {
    throw Error(ErrorCode::InvalidArgument, "sigma_tau must be a non-negative real");
  }
  if (!(sigma_eps > 0.0) || !std::isfinite(sigma_eps)) {
    throw Error(ErrorCode::InvalidArgument, "sigma_eps must be positive");
  }
  if (n_units < 1) throw Error(ErrorCode::InvalidArgument, "n_units must be at least 1");
  if (n_coders < 2) throw Error(ErrorCode::InvalidArgument, "n_coders must be at least 2");
  if (!(missing_rate >= 0.0 && missing_rate < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "missing_rate must lie in [0, 1)");
  }
}

double true_alpha(const AnovaConfig& cfg) {
  cfg.validate();
  const double tau2 = cfg.sigma_tau * cfg.sigma_tau;
  return tau2 / (tau2 + cfg.sigma_eps * cfg.sigma_eps);
}

ReliabilityMatrix gen_anova(const AnovaConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  CounterRng rng(seed, 0, kGenerateLane);
  std::vector<ReliabilityMatrix::Cell> cells;
  cells.reserve(cfg.n_units * cfg.n_coders);
  for (std::size_t i = 0; i < cfg.n_units; ++i) {
    const double unit_effect = cfg.sigma_tau * rng.normal();
    for (std::size_t j = 0; j < cfg.n_coders; ++j) {
      const double score = cfg.mu + unit_effect + cfg.sigma_eps * rng.normal();
      const bool blank = cfg.missing_rate > 0.0 && rng.uniform() < cfg.missing_rate;
      cells.push_back(blank ? ReliabilityMatrix::Cell{} : ReliabilityMatrix::Cell{score});
    }
  }
  return {cfg.n_units, cfg.n_coders, std::move(cells)};
}

CoverageReport run_coverage(const AnovaConfig& cfg, std::size_t reps,
                            const BootstrapConfig& bcfg) {
  cfg.validate();
  if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be at least 1");

  CoverageReport report;
  report.reps = reps;
  report.true_alpha = true_alpha(cfg);
  report.per_rep.resize(reps);
  const DistanceSpec interval = DistanceSpec::interval();

  parallel_for(reps, bcfg.workers, [&](std::size_t r) {
    const std::uint64_t seed = rep_seed(bcfg.seed, r);
    try {
      const ReliabilityMatrix data = gen_anova(cfg, seed);
      const AlphaEstimate est = alpha_point(data, interval);
      BootstrapConfig inner = bcfg;
      inner.seed = seed;
      inner.workers = 1;
      inner.progress = nullptr;
      const BootstrapResult boot = resample_alpha(data, interval, est, inner);
      auto& out = report.per_rep[r];
      out.alpha_hat = est.alpha;
      out.ci_lower = boot.ci_lower;
      out.ci_upper = boot.ci_upper;
      out.hit = boot.ci_lower <= report.true_alpha && report.true_alpha <= boot.ci_upper;
    } catch (const Error& e) {
      throw Error(e.code(), "coverage rep " + std::to_string(r + 1) + ": " + e.what());
    }
  });

  double width_sum = 0.0;
  for (const auto& rep : report.per_rep) {
    report.hits += rep.hit;
    width_sum += rep.ci_upper - rep.ci_lower;
  }
  report.coverage = static_cast<double>(report.hits) / static_cast<double>(reps);
  report.mean_ci_width = width_sum / static_cast<double>(reps);
  return report;
}

}  // namespace kalpha
