#pragma once

// Datasets and independent oracles shared by the unit and acceptance tests.
// Nothing here calls into the estimator under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "kalpha/matrix.hpp"

namespace kalpha::testing {

inline constexpr std::optional<double> NA{};

// Twelve units by four coders, nominal codes 1..5 with seven missing cells.
inline ReliabilityMatrix nominal_example() {
  return ReliabilityMatrix::from_rows({
      {1, 1, NA, 1},
      {2, 2, 3, 2},
      {3, 3, 3, 3},
      {3, 3, 3, 3},
      {2, 2, 2, 2},
      {1, 2, 3, 4},
      {4, 4, 4, 4},
      {1, 1, 2, 1},
      {2, 2, 2, 2},
      {NA, 5, 5, 5},
      {NA, NA, 1, 1},
      {NA, 3, NA, NA},
  });
}

inline const char* nominal_example_csv() {
  return "1,1,NA,1\n"
         "2,2,3,2\n"
         "3,3,3,3\n"
         "3,3,3,3\n"
         "2,2,2,2\n"
         "1,2,3,4\n"
         "4,4,4,4\n"
         "1,1,2,1\n"
         "2,2,2,2\n"
         "NA,5,5,5\n"
         "NA,NA,1,1\n"
         "NA,3,NA,NA\n";
}

struct Rational {
  std::int64_t num;
  std::int64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational reduce(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

// Exact nominal alpha by exhaustive pair counting over integer codes.
// D_o = [sum_u (disagreeing ordered pairs in u) / (m_u - 1)] / N_o over units
// with m_u >= 2; D_e = disagreeing ordered pairs in the pooled scores /
// (N (N - 1)). Everything is kept as an exact fraction.
inline Rational nominal_alpha_oracle(const std::vector<std::vector<std::optional<double>>>& rows) {
  // D_o as a fraction do_num / do_den.
  std::int64_t do_num = 0;
  std::int64_t do_den = 1;
  std::int64_t pairable = 0;
  std::vector<long long> pool;
  for (const auto& row : rows) {
    std::vector<long long> v;
    for (const auto& c : row) {
      if (c) v.push_back(static_cast<long long>(*c));
    }
    pool.insert(pool.end(), v.begin(), v.end());
    if (v.size() < 2) continue;
    std::int64_t disagree = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t k = 0; k < v.size(); ++k) disagree += (j != k && v[j] != v[k]);
    }
    const std::int64_t m1 = static_cast<std::int64_t>(v.size()) - 1;
    // do += disagree / m1
    const Rational acc = reduce(do_num * m1 + disagree * do_den, do_den * m1);
    do_num = acc.num;
    do_den = acc.den;
    pairable += static_cast<std::int64_t>(v.size());
  }
  const Rational d_o = reduce(do_num, do_den * pairable);

  const auto n = static_cast<std::int64_t>(pool.size());
  std::int64_t pooled_disagree = 0;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = 0; b < pool.size(); ++b) pooled_disagree += (a != b && pool[a] != pool[b]);
  }
  const Rational d_e = reduce(pooled_disagree, n * (n - 1));
  // alpha = 1 - d_o / d_e = (d_e - d_o) / d_e
  return reduce(d_e.num * d_o.den - d_o.num * d_e.den, d_e.num * d_o.den);
}

inline std::vector<std::vector<std::optional<double>>> rows_of(const ReliabilityMatrix& m) {
  std::vector<std::vector<std::optional<double>>> rows(m.units());
  for (std::size_t i = 0; i < m.units(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return rows;
}

// Random matrices for property tests (std::mt19937_64; independent of the
// library's generator).
struct MatrixGen {
  std::mt19937_64 rng;
  explicit MatrixGen(std::uint64_t seed) : rng(seed) {}

  std::size_t uniform_size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  // Gaussian scores with a per-unit shift; each cell blanked with
  // probability missing, re-drawn until at least one unit is pairable and
  // the scores are not all identical.
  ReliabilityMatrix gaussian(std::size_t units, std::size_t coders, double missing = 0.0) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::bernoulli_distribution blank(missing);
    for (;;) {
      std::vector<ReliabilityMatrix::Cell> cells;
      std::size_t pairable = 0;
      for (std::size_t i = 0; i < units; ++i) {
        const double shift = z(rng);
        std::size_t present = 0;
        for (std::size_t j = 0; j < coders; ++j) {
          if (missing > 0.0 && blank(rng)) {
            cells.emplace_back();
          } else {
            cells.emplace_back(shift + z(rng));
            ++present;
          }
        }
        pairable += present >= 2;
      }
      if (pairable > 0) return {units, coders, std::move(cells)};
    }
  }

  // Integer categories 1..k.
  ReliabilityMatrix categorical(std::size_t units, std::size_t coders, int k, double missing = 0.0) {
    std::uniform_int_distribution<int> cat(1, k);
    std::bernoulli_distribution blank(missing);
    for (;;) {
      std::vector<ReliabilityMatrix::Cell> cells;
      std::size_t pairable = 0;
      std::vector<double> seen;
      for (std::size_t i = 0; i < units; ++i) {
        const int base = cat(rng);
        std::size_t present = 0;
        for (std::size_t j = 0; j < coders; ++j) {
          if (missing > 0.0 && blank(rng)) {
            cells.emplace_back();
            continue;
          }
          // Coders agree with the unit's base code most of the time.
          const int v = std::bernoulli_distribution(0.7)(rng) ? base : cat(rng);
          cells.emplace_back(v);
          seen.push_back(v);
          ++present;
        }
        pairable += present >= 2;
      }
      const bool varied = !seen.empty() &&
                          std::any_of(seen.begin(), seen.end(), [&](double v) { return v != seen[0]; });
      if (pairable > 0 && varied) return {units, coders, std::move(cells)};
    }
  }

  // Positive scores for the ratio distance.
  ReliabilityMatrix positive(std::size_t units, std::size_t coders) {
    std::lognormal_distribution<double> ln(1.0, 0.5);
    std::vector<ReliabilityMatrix::Cell> cells;
    for (std::size_t i = 0; i < units; ++i) {
      const double base = ln(rng);
      for (std::size_t j = 0; j < coders; ++j) cells.emplace_back(base * ln(rng) / 3.0);
    }
    return {units, coders, std::move(cells)};
  }
};

inline double rel_err(double a, double b) {
  const double scale = std::max({1e-300, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

}  // namespace kalpha::testing
