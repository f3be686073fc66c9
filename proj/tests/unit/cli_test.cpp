#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kalpha/bootstrap.hpp"
#include "kalpha/cli/app.hpp"
#include "kalpha/cli/histogram.hpp"
#include "kalpha/cli/ingest.hpp"
#include "kalpha/cli/report.hpp"
#include "kalpha/error.hpp"
#include "support/fixtures.hpp"

using namespace kalpha;
using namespace kalpha::cli;
namespace fs = std::filesystem;

namespace {

ReliabilityMatrix parse(const std::string& text, InputSpec spec = {}) {
  std::istringstream in(text);
  return parse_csv(in, spec);
}

ErrorCode parse_error(const std::string& text, InputSpec spec = {}) {
  try {
    parse(text, spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("kalpha_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents = {}) const {
    const auto p = path_ / name;
    if (!contents.empty()) std::ofstream(p) << contents;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ingest the nominal example") {
  const auto m = parse(kalpha::testing::nominal_example_csv());
  CHECK(m == kalpha::testing::nominal_example());
  const std::vector<std::size_t> expected{3, 4, 4, 4, 4, 4, 4, 4, 4, 3, 2, 1};
  for (std::size_t i = 0; i < m.units(); ++i) CHECK(m.present_in(i) == expected[i]);
}

TEST_CASE("cell parsing") {
  const auto m = parse("3.5e1, +2\n\"4\",NA\n-1.25,\n");
  CHECK(m.at(0, 0) == 35.0);
  CHECK(m.at(0, 1) == 2.0);
  CHECK(m.at(1, 0) == 4.0);
  CHECK_FALSE(m.at(1, 1).has_value());
  CHECK(m.at(2, 0) == -1.25);
  CHECK_FALSE(m.at(2, 1).has_value());

  InputSpec spec;
  spec.has_header = true;
  spec.delimiter = ';';
  spec.na_tokens = {"."};
  const auto h = parse("a;b;c\n\n1;.;3\n  \n4;5;6\n", spec);
  CHECK(h.units() == 2);
  CHECK(h.coders() == 3);
  CHECK_FALSE(h.at(0, 1).has_value());
}

TEST_CASE("ingest errors") {
  try {
    parse("1,2,3\n1,2\n");
    FAIL("expected RaggedRows");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RaggedRows);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  CHECK(parse_error("1,x\n") == ErrorCode::UnparseableCell);
  CHECK(parse_error("1,inf\n") == ErrorCode::UnparseableCell);
  CHECK(parse_error("1,2abc\n") == ErrorCode::UnparseableCell);
  CHECK(parse_error("") == ErrorCode::EmptyFile);
  CHECK(parse_error("\n  \n") == ErrorCode::EmptyFile);
  CHECK(parse_error("1\n2\n") == ErrorCode::InvalidMatrix);
  InputSpec header;
  header.has_header = true;
  CHECK(parse_error("a,b\n", header) == ErrorCode::EmptyFile);

  InputSpec missing;
  missing.path = "/nonexistent/kalpha.csv";
  try {
    ingest(missing);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("alpha text report") {
  TempDir dir;
  const auto csv = dir.file("nominal.csv", kalpha::testing::nominal_example_csv());
  const auto r = invoke({"alpha", csv, "--level", "nominal", "--seed", "42", "--bootit", "500"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Krippendorff's Alpha") != std::string::npos);
  CHECK(r.out.find("Data: 12 units x 4 coders") != std::string::npos);
  CHECK(r.out.find("0.7429") != std::string::npos);
  CHECK(r.out.find("Substantial") != std::string::npos);
}

TEST_CASE("alpha json round trip") {
  TempDir dir;
  const auto csv = dir.file("nominal.csv", kalpha::testing::nominal_example_csv());
  const auto boot = dir.file("boot.csv");
  const auto hist = dir.file("hist.svg");
  const std::vector<std::string> args{"alpha", csv,    "--level",       "nominal", "--seed",
                                      "42",    "--out", "json",         "--bootit", "400",
                                      "--boot-sample", boot, "--hist", hist, "--workers", "3"};
  const auto r = invoke(args);
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["alpha"].get<double>() == 237.0 / 319.0);
  CHECK(j["d_observed"].get<double>() == 0.2);
  CHECK(j["n_units"] == 12);
  CHECK(j["n_coders"] == 4);
  CHECK(j["retained_units"] == 11);
  CHECK(j["dropped_units"] == 1);
  CHECK(j["n_scores_pooled"] == 41);
  CHECK(j["n_scores_pairable"] == 40);
  CHECK(j["distance"] == "nominal");
  CHECK(j["seed"] == 42);

  // Replicates reproduce the reported interval exactly.
  std::vector<double> reps;
  std::istringstream lines(slurp(boot));
  for (std::string line; std::getline(lines, line);) reps.push_back(std::stod(line));
  REQUIRE(reps.size() == 400);
  const auto [lo, hi] = confint(reps, 0.95);
  CHECK(j["ci_lower"].get<double>() == lo);
  CHECK(j["ci_upper"].get<double>() == hi);

  const auto svg = slurp(hist);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("Bootstrap Estimates") != std::string::npos);

  // Byte-identical artifacts on a rerun with a different worker count.
  const auto boot_first = slurp(boot);
  auto again = args;
  again.back() = "1";
  const auto r2 = invoke(again);
  auto j2 = nlohmann::json::parse(r2.out);
  auto j1 = j;
  j1.erase("workers");
  j2.erase("workers");
  CHECK(j1 == j2);
  CHECK(slurp(boot) == boot_first);
  CHECK(slurp(hist) == svg);
}

TEST_CASE("alpha without interval") {
  TempDir dir;
  const auto csv = dir.file("x.csv", "1,2\n2,2\n3,4\n");
  const auto r = invoke({"alpha", csv, "--level", "interval", "--no-confint", "--out", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ci_lower"].is_null());
  CHECK(j["bootit"] == 0);
}

TEST_CASE("custom distance from the command line") {
  TempDir dir;
  const auto csv = dir.file("x.csv", "1,2,2\n2,2,3\n3,4,4\n5,5,4\n");
  const auto builtin = invoke({"alpha", csv, "--level", "interval", "--no-confint", "--out", "json"});
  const auto custom = invoke({"alpha", csv, "--distance", "(x-y)^2", "--no-confint", "--out", "json"});
  REQUIRE(builtin.code == kExitOk);
  REQUIRE(custom.code == kExitOk);
  CHECK(nlohmann::json::parse(builtin.out)["alpha"] == nlohmann::json::parse(custom.out)["alpha"]);

  const auto bad = invoke({"alpha", csv, "--distance", "(x-y", "--no-confint"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("offset") != std::string::npos);

  const auto warn = invoke({"alpha", csv, "--distance", "x-y", "--no-confint"});
  CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto constant = dir.file("c.csv", "2,2,2\n2,2,2\n2,2,2\n");
  const auto r = invoke({"alpha", constant, "--level", "interval", "--bootit", "50"});
  CHECK(r.code == kExitDegenerate);
  CHECK(r.err.find("D_e = 0") != std::string::npos);

  CHECK(invoke({"alpha"}).code == kExitUsage);
  CHECK(invoke({"alpha", constant}).code == kExitUsage);
  CHECK(invoke({"alpha", constant, "--level", "bogus"}).code == kExitUsage);
  CHECK(invoke({"alpha", constant, "--bootit", "0"}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"alpha", constant, "--level", "interval", "--distance", "x"}).code == kExitUsage);

  const auto ragged = dir.file("r.csv", "1,2,3\n1,2\n");
  const auto rr = invoke({"alpha", ragged, "--level", "interval"});
  CHECK(rr.code == kExitData);
  CHECK(rr.err.find("row 2") != std::string::npos);
  CHECK(invoke({"alpha", dir.file("missing.csv"), "--level", "interval"}).code == kExitData);
  const auto neg = dir.file("n.csv", "1,-2\n3,4\n");
  CHECK(invoke({"alpha", neg, "--level", "ratio", "--no-confint"}).code == kExitData);
  CHECK(invoke({"alpha", neg, "--level", "bipolar", "--no-confint"}).code == kExitUsage);
}

TEST_CASE("influence subcommand") {
  TempDir dir;
  const auto csv = dir.file("nominal.csv", kalpha::testing::nominal_example_csv());
  const auto r = invoke({"influence", csv, "--level", "nominal", "--units", "6,12", "--coders",
                         "3", "--out", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["units"][0]["index"] == 6);
  CHECK(j["units"][0]["reduced_alpha"].get<double>() == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  CHECK(j["units"][1]["index"] == 12);
  CHECK(j["coders"][0]["index"] == 3);
  CHECK(j["coders"][0]["dfbeta"].get<double>() ==
        doctest::Approx(-0.12490096110785766).epsilon(1e-12));

  const auto text = invoke({"influence", csv, "--level", "nominal", "--units", "6"});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("-0.1141961") != std::string::npos);

  CHECK(invoke({"influence", csv, "--units", "13"}).code == kExitUsage);
  CHECK(invoke({"influence", csv, "--units", "0"}).code == kExitUsage);
}

TEST_CASE("simulate subcommand") {
  TempDir dir;
  const auto per_rep = dir.file("reps.csv");
  const auto r = invoke({"simulate", "--reps", "5", "--bootit", "100", "--n-units", "30",
                         "--seed", "3", "--per-rep", per_rep});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["reps"] == 5);
  CHECK(j["true_alpha"] == 0.5);
  const auto csv = slurp(per_rep);
  CHECK(csv.rfind("rep,alpha_hat,ci_lower,ci_upper,hit\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  CHECK(invoke({"simulate", "--sigma-eps", "0"}).code == kExitUsage);
}

TEST_CASE("histogram geometry") {
  CHECK(sturges_bins(1) == 1);
  CHECK(sturges_bins(1000) == 11);
  CHECK(sturges_bins(1024) == 11);

  const std::vector<double> flat(50, 1.0);
  const auto h = make_histogram(flat);
  CHECK(h.counts.size() == 1);
  CHECK(h.counts[0] == 50);
  const auto svg = render_histogram_svg(flat, 1.0, {1.0, 1.0});
  std::size_t bars = 0;
  for (auto p = svg.find("class=\"bar\""); p != std::string::npos;
       p = svg.find("class=\"bar\"", p + 1))
    ++bars;
  CHECK(bars == 1);

  std::vector<double> skew;
  for (int i = 0; i < 200; ++i) skew.push_back(1.0 - 0.002 * i * i / 200.0);
  const auto [lo, hi] = confint(skew, 0.95);
  const auto svg2 = render_histogram_svg(skew, 0.99, {lo, hi});
  auto x_of = [&](const std::string& cls) {
    const auto p = svg2.find("class=\"" + cls + "\"");
    REQUIRE(p != std::string::npos);
    const auto tag = svg2.rfind('<', p);
    const auto x1 = svg2.find("x1=\"", tag);
    return std::stod(svg2.substr(x1 + 4));
  };
  CHECK(x_of("alpha") > x_of("ci-lower"));
  CHECK(x_of("ci-upper") > x_of("ci-lower"));

  std::size_t total = 0;
  for (const auto c : make_histogram(skew).counts) total += c;
  CHECK(total == skew.size());
}

TEST_CASE("format_double round trips") {
  kalpha::testing::MatrixGen gen(4);
  for (int k = 0; k < 1000; ++k) {
    const double v = gen.uniform(-1e6, 1e6) / gen.uniform(1e-3, 1e3);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.2) == "0.2");
}
