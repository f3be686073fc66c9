#include "kalpha/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "kalpha/error.hpp"
#include "kalpha/parallel.hpp"
#include "kalpha/rng.hpp"

namespace kalpha {

namespace {

void validate(const BootstrapConfig& cfg) {
  if (cfg.bootit < 1) throw Error(ErrorCode::InvalidArgument, "bootit must be at least 1");
  if (!(cfg.conf_level > 0.0 && cfg.conf_level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1)");
  }
  if (cfg.workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be at least 1");
  if (cfg.max_redraws < 1) throw Error(ErrorCode::InvalidArgument, "max_redraws must be at least 1");
}

}  // namespace

BootstrapResult resample_alpha(const ReliabilityMatrix& m, const DistanceSpec& d,
                               const BootstrapConfig& cfg) {
  return resample_alpha(m, d, alpha_point(m, d), cfg);
}

BootstrapResult resample_alpha(const ReliabilityMatrix& m, const DistanceSpec& d,
                               const AlphaEstimate& estimate, const BootstrapConfig& cfg) {
  validate(cfg);
  const auto units = unit_disagreements(m, d);
  const std::size_t n_units = units.size();
  const double d_expected = estimate.d_expected;

  BootstrapResult result;
  result.replicates.assign(cfg.bootit, 0.0);
  result.d_expected_fixed = d_expected;
  result.bootit = cfg.bootit;
  result.conf_level = cfg.conf_level;
  result.seed = cfg.seed;
  result.workers = cfg.workers;

  std::mutex progress_mutex;
  std::size_t done = 0;

  parallel_for(cfg.bootit, cfg.workers, [&](std::size_t rep) {
    // Attempt 0 is the replicate's primary draw; later attempts use fresh
    // lanes of the same (seed, rep) stream.
    for (std::uint32_t attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      CounterRng rng(cfg.seed, rep, attempt);
      double sum = 0.0;
      std::size_t pairable = 0;
      for (std::size_t k = 0; k < n_units; ++k) {
        const auto& u = units[rng.below(n_units)];
        if (u.present < 2) continue;
        sum += u.contribution;
        pairable += u.present;
      }
      if (pairable == 0) continue;
      result.replicates[rep] = 1.0 - (sum / static_cast<double>(pairable)) / d_expected;
      if (cfg.progress) {
        std::lock_guard lock(progress_mutex);
        cfg.progress(++done, cfg.bootit);
      }
      return;
    }
    throw Error(ErrorCode::ResampleDegenerate,
                "bootstrap replicate " + std::to_string(rep + 1) + " had no pairable unit after " +
                    std::to_string(cfg.max_redraws) + " redraws");
  });

  std::tie(result.ci_lower, result.ci_upper) = confint(result.replicates, cfg.conf_level);
  return result;
}

double quantile(std::span<const double> sample, double p) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile probability must lie in [0, 1]");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  // 0-based position of h = (n - 1) p + 1.
  const double index = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(index));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = index - static_cast<double>(lo);
  if (frac == 0.0 || sorted[hi] == sorted[lo]) return sorted[lo];
  return (1.0 - frac) * sorted[lo] + frac * sorted[hi];
}

std::pair<double, double> confint(std::span<const double> replicates, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1)");
  }
  const double tail = (1.0 - level) / 2.0;
  return {quantile(replicates, tail), quantile(replicates, 1.0 - tail)};
}

}  // namespace kalpha
