#include "kalpha/cli/report.hpp"

#include <charconv>
#include <sstream>

#include <fmt/format.h>

namespace kalpha::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

RunReport make_run_report(const ReliabilityMatrix& m, const AlphaEstimate& est,
                          const BootstrapResult* boot, const std::string& distance,
                          const std::string& call) {
  RunReport r;
  r.estimate = est;
  r.n_units = m.units();
  r.n_coders = m.coders();
  r.distance = distance;
  r.call = call;
  if (boot != nullptr) {
    r.ci = ConfidenceInterval{boot->ci_lower, boot->ci_upper, boot->conf_level};
    r.bootit = boot->bootit;
    r.seed = boot->seed;
    r.workers = boot->workers;
  }
  return r;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["alpha"] = r.estimate.alpha;
  if (r.ci) {
    j["ci_lower"] = r.ci->lower;
    j["ci_upper"] = r.ci->upper;
    j["conf_level"] = r.ci->level;
  } else {
    j["ci_lower"] = nullptr;
    j["ci_upper"] = nullptr;
    j["conf_level"] = nullptr;
  }
  j["d_observed"] = r.estimate.d_observed;
  j["d_expected"] = r.estimate.d_expected;
  j["n_units"] = r.n_units;
  j["n_coders"] = r.n_coders;
  j["retained_units"] = r.estimate.retained_units.size();
  j["dropped_units"] = r.estimate.dropped_units.size();
  j["n_scores_pooled"] = r.estimate.n_scores_pooled;
  j["n_scores_pairable"] = r.estimate.n_scores_pairable;
  j["bootit"] = r.bootit;
  j["seed"] = r.seed;
  j["workers"] = r.workers;
  j["distance"] = r.distance;
  j["interpretation"] = to_string(interpret(r.estimate.alpha));
  return j;
}

std::string render_text(const RunReport& r) {
  std::ostringstream os;
  os << "Krippendorff's Alpha\n\n";
  os << fmt::format("Data: {} units x {} coders\n\n", r.n_units, r.n_coders);
  if (!r.call.empty()) os << "Call:\n\n" << r.call << "\n\n";

  os << "Control parameters:\n\n";
  os << fmt::format("{:<9}{}\n", "distance", r.distance);
  if (r.ci) {
    os << fmt::format("{:<9}{}\n", "bootit", r.bootit);
    os << fmt::format("{:<9}{}\n", "seed", r.seed);
    os << fmt::format("{:<9}{}\n", "workers", r.workers);
    os << fmt::format("{:<9}{}\n", "level", r.ci->level);
  }
  os << "\nResults:\n\n";
  if (r.ci) {
    os << "      Estimate  Lower  Upper\n";
    os << fmt::format("alpha {:>8.4f} {:>6.4f} {:>6.4f}\n", r.estimate.alpha, r.ci->lower,
                      r.ci->upper);
  } else {
    os << "      Estimate\n";
    os << fmt::format("alpha {:>8.4f}\n", r.estimate.alpha);
  }
  os << fmt::format("\nD_o {:.4f}  D_e {:.4f}  ({} of {} units pairable, {} scores pooled)\n",
                    r.estimate.d_observed, r.estimate.d_expected,
                    r.estimate.retained_units.size(), r.n_units, r.estimate.n_scores_pooled);
  os << "Interpretation: " << to_string(interpret(r.estimate.alpha)) << " agreement\n";
  return os.str();
}

nlohmann::ordered_json to_json(const DfBetaReport& report, const ReliabilityMatrix& m,
                               const std::string& distance) {
  nlohmann::ordered_json j;
  j["base_alpha"] = report.base_alpha;
  j["n_units"] = m.units();
  j["n_coders"] = m.coders();
  j["distance"] = distance;
  auto entries = [&](const std::map<std::size_t, double>& dfbetas) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [idx, dfbeta] : dfbetas) {
      nlohmann::ordered_json e;
      e["index"] = idx + 1;
      e["dfbeta"] = dfbeta;
      e["reduced_alpha"] = report.base_alpha - dfbeta;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["units"] = entries(report.unit_dfbetas);
  j["coders"] = entries(report.coder_dfbetas);
  return j;
}

std::string render_text(const DfBetaReport& report) {
  std::ostringstream os;
  os << fmt::format("Influence (dfbeta = full alpha - reduced alpha)\n\nbase alpha {:.7f}\n",
                    report.base_alpha);
  auto table = [&](const char* label, const std::map<std::size_t, double>& dfbetas) {
    if (dfbetas.empty()) return;
    os << fmt::format("\n{:>6} {:>12} {:>14}\n", label, "dfbeta", "reduced alpha");
    for (const auto& [idx, dfbeta] : dfbetas) {
      os << fmt::format("{:>6} {:>12.7f} {:>14.7f}\n", idx + 1, dfbeta,
                        report.base_alpha - dfbeta);
    }
  };
  table("unit", report.unit_dfbetas);
  table("coder", report.coder_dfbetas);
  return os.str();
}

nlohmann::ordered_json to_json(const CoverageReport& report, const AnovaConfig& cfg,
                               const BootstrapConfig& bcfg) {
  nlohmann::ordered_json j;
  j["reps"] = report.reps;
  j["hits"] = report.hits;
  j["coverage"] = report.coverage;
  j["mean_ci_width"] = report.mean_ci_width;
  j["true_alpha"] = report.true_alpha;
  nlohmann::ordered_json c;
  c["mu"] = cfg.mu;
  c["sigma_tau"] = cfg.sigma_tau;
  c["sigma_eps"] = cfg.sigma_eps;
  c["n_units"] = cfg.n_units;
  c["n_coders"] = cfg.n_coders;
  c["missing_rate"] = cfg.missing_rate;
  c["bootit"] = bcfg.bootit;
  c["conf_level"] = bcfg.conf_level;
  c["seed"] = bcfg.seed;
  c["workers"] = bcfg.workers;
  j["config"] = std::move(c);
  return j;
}

std::string render_text(const CoverageReport& report) {
  return fmt::format(
      "Coverage study\n\ntrue alpha     {:.4f}\nreps           {}\nhits           {}\n"
      "coverage       {:.4f}\nmean CI width  {:.4f}\n",
      report.true_alpha, report.reps, report.hits, report.coverage, report.mean_ci_width);
}

std::string boot_sample_csv(const BootstrapResult& result) {
  std::string out;
  out.reserve(result.replicates.size() * 20);
  for (const double v : result.replicates) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

}  // namespace kalpha::cli
