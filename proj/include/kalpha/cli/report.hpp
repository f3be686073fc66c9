#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "kalpha/alpha.hpp"
#include "kalpha/bootstrap.hpp"
#include "kalpha/influence.hpp"
#include "kalpha/simulate.hpp"

namespace kalpha::cli {

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

struct RunReport {
  AlphaEstimate estimate;
  std::optional<ConfidenceInterval> ci;
  std::size_t n_units = 0;
  std::size_t n_coders = 0;
  std::string distance;
  std::size_t bootit = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string call;
};

RunReport make_run_report(const ReliabilityMatrix& m, const AlphaEstimate& est,
                          const BootstrapResult* boot, const std::string& distance,
                          const std::string& call);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

nlohmann::ordered_json to_json(const RunReport& report);
std::string render_text(const RunReport& report);

nlohmann::ordered_json to_json(const DfBetaReport& report, const ReliabilityMatrix& m,
                               const std::string& distance);
std::string render_text(const DfBetaReport& report);

nlohmann::ordered_json to_json(const CoverageReport& report, const AnovaConfig& cfg,
                               const BootstrapConfig& bcfg);
std::string render_text(const CoverageReport& report);

// One replicate per line, full precision, no header.
std::string boot_sample_csv(const BootstrapResult& result);

}  // namespace kalpha::cli
