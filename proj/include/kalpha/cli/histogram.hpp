#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kalpha::cli {

// Equal-width bins over [lo, hi]; the last bin is closed on the right.
// Constant samples give lo == hi and a single bin.
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
};

// Sturges' rule: ceil(log2(n) + 1) bins.
std::size_t sturges_bins(std::size_t n);
Histogram make_histogram(std::span<const double> sample);

// Standalone SVG: bars for the replicates, a solid orange line at the point
// estimate and dashed blue lines at the confidence limits.
std::string render_histogram_svg(std::span<const double> replicates, double alpha,
                                 std::pair<double, double> ci,
                                 const std::string& title = "Bootstrap Distribution");

// Throws Error(IoError) if the file cannot be written.
void emit_histogram(std::span<const double> replicates, double alpha,
                    std::pair<double, double> ci, const std::string& path,
                    const std::string& title = "Bootstrap Distribution");

}  // namespace kalpha::cli
