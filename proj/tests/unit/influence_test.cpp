#include "doctest.h"

#include <cmath>

#include "kalpha/error.hpp"
#include "kalpha/influence.hpp"
#include "support/fixtures.hpp"

using namespace kalpha;
using kalpha::testing::NA;

TEST_CASE("unit dfbetas on the nominal example") {
  const auto m = kalpha::testing::nominal_example();
  const std::vector<std::size_t> units{5, 11};
  const auto r = dfbeta_units(m, DistanceSpec::nominal(), units);
  CHECK(std::abs(r.unit_dfbetas.at(5) - (-0.1141961)) < 1e-6);
  CHECK(std::abs(r.unit_dfbetas.at(11) - (237.0 / 319.0 - 113.0 / 152.0)) < 1e-12);
  CHECK(r.unit_dfbetas.at(11) == doctest::Approx(-0.000474344).epsilon(1e-6));
  CHECK(std::abs((r.base_alpha - r.unit_dfbetas.at(5)) - 6.0 / 7.0) < 1e-12);
}

TEST_CASE("coder dfbeta matches the exhaustive oracle on the reduced matrix") {
  const auto m = kalpha::testing::nominal_example();
  const std::vector<std::size_t> coders{2};
  const auto r = dfbeta_coders(m, DistanceSpec::nominal(), coders);
  // Oracle: 237/319 - 9161/10556 (columns 1, 2, 4).
  const auto reduced = kalpha::testing::nominal_alpha_oracle(
      kalpha::testing::rows_of(m.without_coder(2)));
  CHECK(reduced.num == 9161);
  CHECK(reduced.den == 10556);
  CHECK(std::abs(r.coder_dfbetas.at(2) - (-0.12490096110785766)) < 1e-12);
}

TEST_CASE("reconstruction identity") {
  kalpha::testing::MatrixGen gen(31);
  for (int k = 0; k < 30; ++k) {
    const auto m = gen.categorical(gen.uniform_size(4, 15), gen.uniform_size(3, 5), 4, 0.15);
    std::vector<std::size_t> units(m.units());
    for (std::size_t i = 0; i < units.size(); ++i) units[i] = i;
    DfBetaReport r;
    try {
      r = dfbeta_units(m, DistanceSpec::nominal(), units, 3);
    } catch (const Error&) {
      continue;  // some reduced matrices are legitimately degenerate
    }
    for (const auto& [i, dfbeta] : r.unit_dfbetas) {
      CHECK(r.base_alpha - dfbeta ==
            doctest::Approx(alpha_point(m.without_unit(i), DistanceSpec::nominal()).alpha)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("duplicated coder") {
  const auto m = ReliabilityMatrix::from_rows(
      {{1, 2, 3, 3}, {2, 2, 4, 4}, {5, 4, 5, 5}, {1, 1, 2, 2}, {3, 4, 3, 3}});
  const std::vector<std::size_t> coders{3};
  const auto r = dfbeta_coders(m, DistanceSpec::interval(), coders);
  const double reduced = alpha_point(m.without_coder(3), DistanceSpec::interval()).alpha;
  CHECK(r.coder_dfbetas.at(3) == r.base_alpha - reduced);
  CHECK(r.coder_dfbetas.at(3) != 0.0);
}

TEST_CASE("empty units have zero influence") {
  const auto m = ReliabilityMatrix::from_rows({{1, 2, 2}, {NA, NA, NA}, {3, 3, 1}, {2, 2, 2}});
  const std::vector<std::size_t> units{1};
  CHECK(dfbeta_units(m, DistanceSpec::interval(), units).unit_dfbetas.at(1) == 0.0);
}

TEST_CASE("errors name the offending index") {
  std::vector<std::vector<ReliabilityMatrix::Cell>> rows(4, {2.0, 2.0, 2.0});
  const auto constant = ReliabilityMatrix::from_rows(rows);
  const std::vector<std::size_t> unit0{0};
  try {
    dfbeta_units(constant, DistanceSpec::interval(), unit0);
    FAIL("expected DegenerateData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateData);
  }

  const auto m = ReliabilityMatrix::from_rows({{1, 2}, {2, 3}, {4, 4}});
  const std::vector<std::size_t> coder1{1};
  CHECK_THROWS_AS(dfbeta_coders(m, DistanceSpec::interval(), coder1), Error);

  // Removing the only pairable unit.
  const auto sparse = ReliabilityMatrix::from_rows({{1, 2}, {3, NA}, {NA, 4}});
  const std::vector<std::size_t> first{0};
  try {
    dfbeta_units(sparse, DistanceSpec::interval(), first);
    FAIL("expected NoPairableUnits");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPairableUnits);
    CHECK(std::string(e.what()).find("unit 1") != std::string::npos);
  }

  const std::vector<std::size_t> out_of_range{9};
  CHECK_THROWS_AS(dfbeta_units(m, DistanceSpec::interval(), out_of_range), Error);
}
