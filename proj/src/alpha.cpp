#include "kalpha/alpha.hpp"

#include <cmath>
#include <string>

#include "kalpha/error.hpp"

namespace kalpha {

std::vector<UnitDisagreement> unit_disagreements(const ReliabilityMatrix& m,
                                                 const DistanceSpec& d) {
  std::vector<UnitDisagreement> out(m.units());
  std::vector<double> scores;
  for (std::size_t i = 0; i < m.units(); ++i) {
    scores = m.scores_of(i);
    const std::size_t present = scores.size();
    out[i].present = present;
    if (present < 2) continue;
    double pair_sum = 0.0;
    for (std::size_t j = 0; j < present; ++j) {
      for (std::size_t k = 0; k < present; ++k) {
        if (j != k) pair_sum += d(scores[j], scores[k]);
      }
    }
    out[i].contribution = pair_sum / static_cast<double>(present - 1);
  }
  return out;
}

namespace {

struct ObservedParts {
  double sum = 0.0;
  std::size_t pairable = 0;
};

ObservedParts observed_parts(const std::vector<UnitDisagreement>& units) {
  ObservedParts parts;
  for (const auto& u : units) {
    if (u.present < 2) continue;
    parts.sum += u.contribution;
    parts.pairable += u.present;
  }
  if (parts.pairable == 0) {
    throw Error(ErrorCode::NoPairableUnits, "no unit has two or more present scores");
  }
  return parts;
}

}  // namespace

double observed_disagreement(const ReliabilityMatrix& m, const DistanceSpec& d) {
  const auto parts = observed_parts(unit_disagreements(m, d));
  return parts.sum / static_cast<double>(parts.pairable);
}

double expected_disagreement(const ReliabilityMatrix& m, const DistanceSpec& d) {
  const std::vector<double> pool = m.pooled_scores();
  const std::size_t n = pool.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientScores,
                "expected disagreement needs at least two present scores, found " +
                    std::to_string(n));
  }
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) total += d(pool[a], pool[b]);
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

AlphaEstimate alpha_point(const ReliabilityMatrix& m, const DistanceSpec& d) {
  const auto units = unit_disagreements(m, d);
  const auto parts = observed_parts(units);

  AlphaEstimate est;
  est.d_observed = parts.sum / static_cast<double>(parts.pairable);
  est.d_expected = expected_disagreement(m, d);
  est.n_scores_pairable = parts.pairable;
  for (std::size_t i = 0; i < units.size(); ++i) {
    est.n_scores_pooled += units[i].present;
    (units[i].present >= 2 ? est.retained_units : est.dropped_units).push_back(i);
  }
  if (est.d_expected == 0.0) {
    throw Error(ErrorCode::DegenerateData,
                "expected disagreement D_e = 0 (no variation among scores); alpha is undefined");
  }
  est.alpha = 1.0 - est.d_observed / est.d_expected;
  return est;
}

double anova_alpha_oracle(const ReliabilityMatrix& m) {
  if (!m.complete()) {
    throw Error(ErrorCode::IncompleteData, "ANOVA estimator needs a complete matrix");
  }
  const std::size_t nu = m.units();
  const std::size_t nc = m.coders();

  double grand_sum = 0.0;
  for (std::size_t i = 0; i < nu; ++i) {
    for (std::size_t j = 0; j < nc; ++j) grand_sum += *m.at(i, j);
  }
  const double grand_mean = grand_sum / static_cast<double>(nu * nc);

  double within = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < nu; ++i) {
    double unit_sum = 0.0;
    for (std::size_t j = 0; j < nc; ++j) unit_sum += *m.at(i, j);
    const double unit_mean = unit_sum / static_cast<double>(nc);
    for (std::size_t j = 0; j < nc; ++j) {
      const double y = *m.at(i, j);
      within += (y - unit_mean) * (y - unit_mean);
      total += (y - grand_mean) * (y - grand_mean);
    }
  }
  if (total == 0.0) {
    throw Error(ErrorCode::DegenerateData, "all scores identical; ANOVA alpha is undefined");
  }
  const double error_var = within / static_cast<double>(nu * (nc - 1));
  const double total_var = total / static_cast<double>(nu * nc - 1);
  return 1.0 - error_var / total_var;
}

double mrpp_delta(const MrppInput& input) {
  if (input.groups.empty()) throw Error(ErrorCode::InvalidArgument, "MRPP needs at least one group");
  if (input.weights.size() != input.groups.size()) {
    throw Error(ErrorCode::InvalidArgument, "MRPP needs one weight per group");
  }
  if (!input.rho) throw Error(ErrorCode::InvalidArgument, "MRPP needs a distance function");

  double weight_sum = 0.0;
  for (const double w : input.weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidArgument, "MRPP weights must be positive");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "MRPP weights must sum to 1");
  }

  double delta = 0.0;
  for (std::size_t g = 0; g < input.groups.size(); ++g) {
    const auto& group = input.groups[g];
    const std::size_t n = group.size();
    if (n < 2) {
      throw Error(ErrorCode::GroupTooSmall,
                  "MRPP group " + std::to_string(g + 1) + " has fewer than two members");
    }
    double pair_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) pair_sum += input.rho(group[j], group[k]);
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    delta += input.weights[g] * (pair_sum / pairs);
  }
  return delta;
}

MrppInput mrpp_input_from(const ReliabilityMatrix& m, const DistanceSpec& d) {
  MrppInput input;
  std::size_t pairable = 0;
  for (std::size_t i = 0; i < m.units(); ++i) {
    auto scores = m.scores_of(i);
    if (scores.size() < 2) continue;
    pairable += scores.size();
    input.groups.push_back(std::move(scores));
  }
  if (pairable == 0) {
    throw Error(ErrorCode::NoPairableUnits, "no unit has two or more present scores");
  }
  for (const auto& g : input.groups) {
    input.weights.push_back(static_cast<double>(g.size()) / static_cast<double>(pairable));
  }
  input.rho = [d](double a, double b) { return d(a, b); };
  return input;
}

Agreement interpret(double alpha) {
  if (alpha <= 0.2) return Agreement::Slight;
  if (alpha <= 0.4) return Agreement::Fair;
  if (alpha <= 0.6) return Agreement::Moderate;
  if (alpha <= 0.8) return Agreement::Substantial;
  return Agreement::NearPerfect;
}

const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::Slight: return "Slight";
    case Agreement::Fair: return "Fair";
    case Agreement::Moderate: return "Moderate";
    case Agreement::Substantial: return "Substantial";
    case Agreement::NearPerfect: return "Near-Perfect";
  }
  return "Unknown";
}

}  // namespace kalpha
