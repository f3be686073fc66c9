#include "kalpha/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

#include "CLI11.hpp"

#include "kalpha/alpha.hpp"
#include "kalpha/bootstrap.hpp"
#include "kalpha/cli/histogram.hpp"
#include "kalpha/cli/ingest.hpp"
#include "kalpha/cli/report.hpp"
#include "kalpha/error.hpp"
#include "kalpha/influence.hpp"
#include "kalpha/simulate.hpp"

namespace kalpha::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::UnknownIdentifier:
      return kExitUsage;
    case ErrorCode::DegenerateData:
    case ErrorCode::ResampleDegenerate:
      return kExitDegenerate;
    default:
      return kExitData;
  }
}

struct DistanceOptions {
  std::string level;
  std::string expression;
  int intervals = 0;
  double min = 0.0;
  double max = 0.0;
  CLI::Option* level_opt = nullptr;
  CLI::Option* expr_opt = nullptr;
  CLI::Option* intervals_opt = nullptr;
  CLI::Option* min_opt = nullptr;
  CLI::Option* max_opt = nullptr;

  void attach(CLI::App& app) {
    level_opt = app.add_option("--level", level,
                               "Level of measurement: nominal, ordinal, interval, ratio, "
                               "bipolar, circular");
    expr_opt = app.add_option("--distance", expression,
                              "Custom squared distance in x and y, e.g. \"abs(x-y)\"");
    level_opt->excludes(expr_opt);
    intervals_opt = app.add_option("--intervals", intervals,
                                   "Number of equal intervals on the circle (circular)");
    min_opt = app.add_option("--min", min, "Smallest possible score (bipolar)");
    max_opt = app.add_option("--max", max, "Largest possible score (bipolar)");
  }

  DistanceSpec resolve() const {
    if (expr_opt->count() > 0) return DistanceSpec::custom(parse_expression(expression), expression);
    if (level_opt->count() == 0) {
      throw Error(ErrorCode::InvalidArgument, "one of --level or --distance is required");
    }
    if (level == "circular") {
      if (intervals_opt->count() == 0) {
        throw Error(ErrorCode::InvalidArgument, "--level circular requires --intervals");
      }
      return DistanceSpec::circular(intervals);
    }
    if (level == "bipolar") {
      if (min_opt->count() == 0 || max_opt->count() == 0) {
        throw Error(ErrorCode::InvalidArgument, "--level bipolar requires --min and --max");
      }
      return DistanceSpec::bipolar(min, max);
    }
    return DistanceSpec::from_level_name(level);
  }
};

struct InputOptions {
  std::string path;
  bool header = false;
  std::vector<std::string> na;
  std::string delimiter = ",";

  void attach(CLI::App& app) {
    app.add_option("input", path, "CSV file (units in rows, coders in columns), or - for stdin")
        ->required();
    app.add_flag("--header", header, "First non-blank line is a header");
    app.add_option("--na", na, "Tokens that denote a missing score (default: NA and empty)");
    app.add_option("--delimiter", delimiter, "Field delimiter (default ,)");
  }

  InputSpec spec() const {
    InputSpec s;
    s.path = path;
    s.has_header = header;
    if (!na.empty()) s.na_tokens = na;
    if (delimiter.size() != 1 || !std::isprint(static_cast<unsigned char>(delimiter[0]))) {
      throw Error(ErrorCode::InvalidArgument, "--delimiter must be a single printable character");
    }
    s.delimiter = delimiter[0];
    return s;
  }
};

std::string join_call(const std::vector<std::string>& args) {
  std::string call = "kalpha";
  for (const auto& a : args) {
    call += ' ';
    if (a.find_first_of(" \t\"'()*^") != std::string::npos) {
      call += '"';
      for (const char c : a) {
        if (c == '"') call += '\\';
        call += c;
      }
      call += '"';
    } else {
      call += a;
    }
  }
  return call;
}

// Warns about custom distances that are not symmetric or have a nonzero
// diagonal on the distinct scores actually present in the data.
void warn_custom_distance(const DistanceSpec& d, const ReliabilityMatrix& m, std::ostream& err) {
  if (d.expression() == nullptr) return;
  std::vector<double> grid = m.pooled_scores();
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  constexpr std::size_t kMaxProbe = 50;
  if (grid.size() > kMaxProbe) {
    std::vector<double> thinned;
    for (std::size_t k = 0; k < kMaxProbe; ++k) {
      thinned.push_back(grid[k * (grid.size() - 1) / (kMaxProbe - 1)]);
    }
    grid = std::move(thinned);
  }
  const auto diag = validate_distance(*d.expression(), grid);
  constexpr std::size_t kMaxShown = 5;
  for (std::size_t k = 0; k < diag.violations.size() && k < kMaxShown; ++k) {
    err << "warning: distance is " << to_string(diag.violations[k].kind) << ": "
        << diag.violations[k].message << '\n';
  }
  if (diag.violations.size() > kMaxShown) {
    err << "warning: " << diag.violations.size() - kMaxShown << " more distance warnings\n";
  }
}

class ProgressBar {
 public:
  explicit ProgressBar(std::ostream& err) : err_(err) {}

  void update(std::size_t done, std::size_t total) {
    const std::size_t filled = done * kWidth / total;
    if (filled == shown_ && done != total) return;
    shown_ = filled;
    err_ << "\r  |" << std::string(filled, '+') << std::string(kWidth - filled, ' ') << "| "
         << done * 100 / total;
    if (done == total) err_ << '\n';
    err_.flush();
  }

 private:
  static constexpr std::size_t kWidth = 50;
  std::ostream& err_;
  std::size_t shown_ = static_cast<std::size_t>(-1);
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& one_based,
                                       const char* what) {
  std::vector<std::size_t> out;
  for (const auto i : one_based) {
    if (i == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krippendorff's alpha: point estimates, bootstrap intervals, influence "
               "diagnostics and coverage simulation",
               "kalpha"};
  app.require_subcommand(1);

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "Estimate alpha with a bootstrap interval");
  InputOptions alpha_in;
  DistanceOptions alpha_dist;
  alpha_in.attach(*alpha_cmd);
  alpha_dist.attach(*alpha_cmd);
  BootstrapConfig bcfg;
  bool no_confint = false;
  bool verbose = false;
  std::string out_format = "text";
  std::string boot_sample_path;
  std::string hist_path;
  alpha_cmd->add_option("--bootit", bcfg.bootit, "Bootstrap sample size (default 1000)")
      ->check(CLI::PositiveNumber);
  alpha_cmd->add_flag("--no-confint", no_confint, "Skip the bootstrap");
  alpha_cmd->add_option("--conf-level", bcfg.conf_level, "Confidence level (default 0.95)")
      ->check(CLI::Range(0.0, 1.0));
  alpha_cmd->add_option("--seed", bcfg.seed, "Random seed (default 1)");
  alpha_cmd->add_option("--workers", bcfg.workers, "Bootstrap threads (default 1)")
      ->check(CLI::PositiveNumber);
  alpha_cmd->add_option("--out", out_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  alpha_cmd->add_option("--boot-sample", boot_sample_path, "Write bootstrap replicates as CSV");
  alpha_cmd->add_option("--hist", hist_path, "Write an SVG histogram of the replicates");
  alpha_cmd->add_flag("--verbose", verbose, "Show a progress bar while bootstrapping");

  // influence
  auto* infl_cmd = app.add_subcommand("influence", "Leave-one-out dfbeta diagnostics");
  InputOptions infl_in;
  DistanceOptions infl_dist;
  infl_in.attach(*infl_cmd);
  infl_dist.attach(*infl_cmd);
  std::vector<std::size_t> units_1;
  std::vector<std::size_t> coders_1;
  unsigned infl_workers = 1;
  std::string infl_format = "text";
  infl_cmd->add_option("--units", units_1, "1-based unit indices, comma separated")
      ->delimiter(',');
  infl_cmd->add_option("--coders", coders_1, "1-based coder indices, comma separated")
      ->delimiter(',');
  infl_cmd->add_option("--workers", infl_workers, "Refit threads (default 1)")
      ->check(CLI::PositiveNumber);
  infl_cmd->add_option("--out", infl_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Bootstrap interval coverage under the "
                                                 "one-way random-effects model");
  AnovaConfig acfg;
  BootstrapConfig sim_bcfg;
  sim_bcfg.bootit = 500;
  std::size_t reps = 100;
  std::string sim_format = "json";
  std::string per_rep_path;
  sim_cmd->add_option("--mu", acfg.mu, "Population mean (default 0)");
  sim_cmd->add_option("--sigma-tau", acfg.sigma_tau, "Unit effect SD (default 1)");
  sim_cmd->add_option("--sigma-eps", acfg.sigma_eps, "Error SD (default 1)");
  sim_cmd->add_option("--n-units", acfg.n_units, "Units per dataset (default 100)");
  sim_cmd->add_option("--n-coders", acfg.n_coders, "Coders per dataset (default 4)");
  sim_cmd->add_option("--missing-rate", acfg.missing_rate, "MCAR cell blanking rate (default 0)");
  sim_cmd->add_option("--reps", reps, "Simulated datasets (default 100)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--bootit", sim_bcfg.bootit, "Bootstrap sample size (default 500)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--conf-level", sim_bcfg.conf_level, "Confidence level (default 0.95)")
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--seed", sim_bcfg.seed, "Master seed (default 1)");
  sim_cmd->add_option("--workers", sim_bcfg.workers, "Threads (default 1)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim_format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sim_cmd->add_option("--per-rep", per_rep_path, "Write per-rep results as CSV");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("kalpha");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*alpha_cmd) {
      if (no_confint && (!boot_sample_path.empty() || !hist_path.empty())) {
        throw Error(ErrorCode::InvalidArgument, "--boot-sample and --hist need the bootstrap");
      }
      const DistanceSpec d = alpha_dist.resolve();
      const InputSpec in = alpha_in.spec();
      const ReliabilityMatrix m = ingest(in);
      warn_custom_distance(d, m, err);
      const AlphaEstimate est = alpha_point(m, d);

      std::optional<BootstrapResult> boot;
      if (!no_confint) {
        std::unique_ptr<ProgressBar> bar;
        if (verbose) {
          bar = std::make_unique<ProgressBar>(err);
          bcfg.progress = [&bar](std::size_t done, std::size_t total) { bar->update(done, total); };
        }
        boot = resample_alpha(m, d, est, bcfg);
      }

      const RunReport report =
          make_run_report(m, est, boot ? &*boot : nullptr, d.describe(), join_call(args));
      if (boot && !boot_sample_path.empty()) write_file(boot_sample_path, boot_sample_csv(*boot));
      if (boot && !hist_path.empty()) {
        emit_histogram(boot->replicates, est.alpha, {boot->ci_lower, boot->ci_upper}, hist_path);
      }
      if (out_format == "json") {
        out << to_json(report).dump(2) << '\n';
      } else {
        out << render_text(report);
      }
      return kExitOk;
    }

    if (*infl_cmd) {
      if (units_1.empty() && coders_1.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give --units and/or --coders");
      }
      const DistanceSpec d = infl_dist.resolve();
      const auto units = to_zero_based(units_1, "unit");
      const auto coders = to_zero_based(coders_1, "coder");
      const ReliabilityMatrix m = ingest(infl_in.spec());
      warn_custom_distance(d, m, err);
      DfBetaReport report = dfbeta_units(m, d, units, infl_workers);
      if (!coders.empty()) {
        report.coder_dfbetas = dfbeta_coders(m, d, coders, infl_workers).coder_dfbetas;
      }
      if (infl_format == "json") {
        out << to_json(report, m, d.describe()).dump(2) << '\n';
      } else {
        out << render_text(report);
      }
      return kExitOk;
    }

    if (*sim_cmd) {
      const CoverageReport report = run_coverage(acfg, reps, sim_bcfg);
      if (!per_rep_path.empty()) {
        std::string csv = "rep,alpha_hat,ci_lower,ci_upper,hit\n";
        for (std::size_t r = 0; r < report.per_rep.size(); ++r) {
          const auto& rep = report.per_rep[r];
          csv += std::to_string(r + 1) + ',' + format_double(rep.alpha_hat) + ',' +
                 format_double(rep.ci_lower) + ',' + format_double(rep.ci_upper) + ',' +
                 (rep.hit ? "1" : "0") + '\n';
        }
        write_file(per_rep_path, csv);
      }
      if (sim_format == "json") {
        out << to_json(report, acfg, sim_bcfg).dump(2) << '\n';
      } else {
        out << render_text(report);
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: invalid distance expression: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace kalpha::cli
