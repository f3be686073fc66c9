#include "kalpha/cli/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "kalpha/error.hpp"

namespace kalpha::cli {

std::size_t sturges_bins(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) + 1.0));
}

Histogram make_histogram(std::span<const double> sample) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "histogram of an empty sample");
  const auto [min_it, max_it] = std::minmax_element(sample.begin(), sample.end());
  Histogram h;
  h.lo = *min_it;
  h.hi = *max_it;
  if (h.lo == h.hi) {
    h.counts = {sample.size()};
    return h;
  }
  const std::size_t bins = sturges_bins(sample.size());
  h.counts.assign(bins, 0);
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (const double v : sample) {
    auto b = static_cast<std::size_t>((v - h.lo) / width);
    h.counts[std::min(b, bins - 1)] += 1;
  }
  return h;
}

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_histogram_svg(std::span<const double> replicates, double alpha,
                                 std::pair<double, double> ci, const std::string& title) {
  const Histogram h = make_histogram(replicates);

  double x_min = std::min({h.lo, alpha, ci.first});
  double x_max = std::max({h.hi, alpha, ci.second});
  if (x_min == x_max) {
    const double pad = 0.05 * std::max(1.0, std::abs(x_min));
    x_min -= pad;
    x_max += pad;
  } else {
    const double pad = 0.02 * (x_max - x_min);
    x_min -= pad;
    x_max += pad;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const std::size_t max_count = *std::max_element(h.counts.begin(), h.counts.end());
  const auto py = [&](double c) {
    return kTop + plot_h - c / static_cast<double>(max_count) * plot_h;
  };

  std::ostringstream os;
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      kWidth, kHeight);
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << fmt::format(
      "<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"16\">{}</text>\n",
      kLeft + plot_w / 2, escape(title));

  // Bars.
  if (h.lo == h.hi) {
    const double half = 0.02 * plot_w;
    const double x = px(h.lo);
    os << fmt::format(
        "<rect class=\"bar\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"#d9d9d9\" stroke=\"black\" data-lo=\"{}\" data-hi=\"{}\" data-count=\"{}\"/>\n",
        x - half, py(static_cast<double>(h.counts[0])), 2 * half,
        plot_h, h.lo, h.hi, h.counts[0]);
  } else {
    const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      const double lo = h.lo + width * static_cast<double>(b);
      const double hi = b + 1 == h.counts.size() ? h.hi : lo + width;
      const double top = py(static_cast<double>(h.counts[b]));
      os << fmt::format(
          "<rect class=\"bar\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
          "fill=\"#d9d9d9\" stroke=\"black\" data-lo=\"{}\" data-hi=\"{}\" data-count=\"{}\"/>\n",
          px(lo), top, px(hi) - px(lo), kTop + plot_h - top, lo, hi, h.counts[b]);
    }
  }

  // Axes with ticks.
  const double axis_y = kTop + plot_h;
  os << fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
      kLeft, axis_y, kLeft + plot_w);
  os << fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
      kLeft, kTop, axis_y);
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = x_min + (x_max - x_min) * t / kTicks;
    os << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"11\">{4:.3g}</text>\n",
        px(xv), axis_y, axis_y + 5, axis_y + 18, xv);
    const double cv = static_cast<double>(max_count) * t / kTicks;
    os << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
        "font-size=\"11\">{5:.0f}</text>\n",
        kLeft - 5, py(cv), kLeft, kLeft - 8, py(cv) + 4, cv);
  }
  os << fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">Bootstrap Estimates</text>\n",
      kLeft + plot_w / 2, kHeight - 15);
  os << fmt::format(
      "<text transform=\"translate(18,{:.2f}) rotate(-90)\" text-anchor=\"middle\" "
      "font-family=\"sans-serif\" font-size=\"13\">Frequency</text>\n",
      kTop + plot_h / 2);

  // Markers.
  auto marker = [&](const char* cls, double value, const char* color, const char* dash) {
    os << fmt::format(
        "<line class=\"{0}\" x1=\"{1:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{3:.2f}\" "
        "stroke=\"{4}\" stroke-width=\"2\"{5} data-value=\"{6}\"/>\n",
        cls, px(value), kTop, axis_y, color, dash, value);
  };
  marker("alpha", alpha, "orange", "");
  marker("ci-lower", ci.first, "blue", " stroke-dasharray=\"6,4\"");
  marker("ci-upper", ci.second, "blue", " stroke-dasharray=\"6,4\"");
  os << "</svg>\n";
  return os.str();
}

void emit_histogram(std::span<const double> replicates, double alpha,
                    std::pair<double, double> ci, const std::string& path,
                    const std::string& title) {
  const std::string svg = render_histogram_svg(replicates, alpha, ci, title);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << svg;
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

}  // namespace kalpha::cli
