#include "kalpha/influence.hpp"

#include <string>
#include <vector>

#include "kalpha/error.hpp"
#include "kalpha/parallel.hpp"

namespace kalpha {

namespace {

enum class Axis { Unit, Coder };

DfBetaReport leave_one_out(const ReliabilityMatrix& m, const DistanceSpec& d,
                           std::span<const std::size_t> indices, unsigned workers, Axis axis) {
  const char* label = axis == Axis::Unit ? "unit" : "coder";
  const std::size_t limit = axis == Axis::Unit ? m.units() : m.coders();
  for (const auto idx : indices) {
    if (idx >= limit) {
      throw Error(ErrorCode::InvalidArgument, std::string(label) + " index " +
                                                  std::to_string(idx + 1) + " out of range 1.." +
                                                  std::to_string(limit));
    }
  }

  DfBetaReport report;
  report.base_alpha = alpha_point(m, d).alpha;

  std::vector<double> reduced(indices.size());
  parallel_for(indices.size(), workers, [&](std::size_t k) {
    const std::size_t idx = indices[k];
    try {
      const ReliabilityMatrix sub =
          axis == Axis::Unit ? m.without_unit(idx) : m.without_coder(idx);
      reduced[k] = alpha_point(sub, d).alpha;
    } catch (const Error& e) {
      throw Error(e.code(), "without " + std::string(label) + " " + std::to_string(idx + 1) +
                                ": " + e.what());
    }
  });

  auto& target = axis == Axis::Unit ? report.unit_dfbetas : report.coder_dfbetas;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    target[indices[k]] = report.base_alpha - reduced[k];
  }
  return report;
}

}  // namespace

DfBetaReport dfbeta_units(const ReliabilityMatrix& m, const DistanceSpec& d,
                          std::span<const std::size_t> units, unsigned workers) {
  return leave_one_out(m, d, units, workers, Axis::Unit);
}

DfBetaReport dfbeta_coders(const ReliabilityMatrix& m, const DistanceSpec& d,
                           std::span<const std::size_t> coders, unsigned workers) {
  return leave_one_out(m, d, coders, workers, Axis::Coder);
}

}  // namespace kalpha
