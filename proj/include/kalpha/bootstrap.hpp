#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kalpha/alpha.hpp"

namespace kalpha {

struct BootstrapConfig {
  std::size_t bootit = 1000;
  double conf_level = 0.95;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t max_redraws = 100;
  // Called once per finished replicate with the number finished so far.
  // Calls are serialized but may come from any worker thread.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct BootstrapResult {
  std::vector<double> replicates;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double d_expected_fixed = 0.0;
  std::size_t bootit = 0;
  double conf_level = 0.0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

// Resamples units with replacement; expected disagreement stays at the value
// of the original data. Replicate i draws from the substream (seed, i), so
// the output is independent of `workers`.
// Throws Error(InvalidArgument) for a bad config, Error(ResampleDegenerate)
// when a replicate has no pairable unit after max_redraws redraws, and
// anything alpha_point throws on the original data.
BootstrapResult resample_alpha(const ReliabilityMatrix& m, const DistanceSpec& d,
                               const BootstrapConfig& cfg);

// Overload that reuses an existing point estimate of the same data.
BootstrapResult resample_alpha(const ReliabilityMatrix& m, const DistanceSpec& d,
                               const AlphaEstimate& estimate,
                               const BootstrapConfig& cfg);

// Sample quantile by linear interpolation between order statistics at
// h = (n - 1) p + 1 (1-based). Throws Error(EmptySample) on empty input.
double quantile(std::span<const double> sample, double p);

// Quantile-method interval: the (1-level)/2 and 1-(1-level)/2 quantiles.
std::pair<double, double> confint(std::span<const double> replicates, double level);
inline std::pair<double, double> confint(const BootstrapResult& result, double level) {
  return confint(result.replicates, level);
}

}  // namespace kalpha
