#pragma once

#include <cstddef>
#include <map>
#include <span>

#include "kalpha/alpha.hpp"

namespace kalpha {

// dfbeta = alpha(full) - alpha(reduced). Indices are 0-based.
struct DfBetaReport {
  double base_alpha = 0.0;
  std::map<std::size_t, double> unit_dfbetas;
  std::map<std::size_t, double> coder_dfbetas;
};

// Exact leave-one-out refits. Errors from a reduced fit are rethrown with the
// same code and a message naming the deleted unit or coder (1-based).
DfBetaReport dfbeta_units(const ReliabilityMatrix& m, const DistanceSpec& d,
                          std::span<const std::size_t> units, unsigned workers = 1);
DfBetaReport dfbeta_coders(const ReliabilityMatrix& m, const DistanceSpec& d,
                           std::span<const std::size_t> coders, unsigned workers = 1);

}  // namespace kalpha
