#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kalpha/distance.hpp"
#include "kalpha/matrix.hpp"

namespace kalpha {

// Disagreement quantities are mean ordered-pair distances: twice the
// textbook values, which leaves alpha unchanged since the factor cancels.
struct AlphaEstimate {
  double alpha = 0.0;
  double d_observed = 0.0;
  double d_expected = 0.0;
  std::size_t n_scores_pooled = 0;    // N: every present score
  std::size_t n_scores_pairable = 0;  // N_o: scores in units with m_i >= 2
  std::vector<std::size_t> retained_units;  // 0-based, m_i >= 2
  std::vector<std::size_t> dropped_units;   // 0-based, m_i < 2
};

// Per-unit share of observed disagreement: the ordered within-unit pair sum
// divided by (m_i - 1). Units with m_i < 2 have weight 0 and contribution 0.
struct UnitDisagreement {
  std::size_t present = 0;
  double contribution = 0.0;
};

std::vector<UnitDisagreement> unit_disagreements(const ReliabilityMatrix& m,
                                                 const DistanceSpec& d);

// Throws Error(NoPairableUnits) when no unit has two present scores.
double observed_disagreement(const ReliabilityMatrix& m, const DistanceSpec& d);

// Pools all present scores, singleton units included.
// Throws Error(InsufficientScores) when fewer than two scores are present.
double expected_disagreement(const ReliabilityMatrix& m, const DistanceSpec& d);

// Throws Error(DegenerateData) when D_e == 0.
AlphaEstimate alpha_point(const ReliabilityMatrix& m, const DistanceSpec& d);

// One-way ANOVA (intraclass) form using unit and grand means.
// Throws Error(IncompleteData) if any cell is missing.
double anova_alpha_oracle(const ReliabilityMatrix& m);

// Multiresponse permutation procedure statistic: sum_i C_i * theta_i where
// theta_i is the mean distance over unordered distinct pairs of group i.
struct MrppInput {
  std::vector<std::vector<double>> groups;
  std::vector<double> weights;
  std::function<double(double, double)> rho;
};

// Throws Error(GroupTooSmall) for groups with fewer than two members and
// Error(InvalidArgument) when weights are non-positive, mis-sized, or do not
// sum to 1 within 1e-12.
double mrpp_delta(const MrppInput& input);

// The retained units of m as MRPP groups with weights m_i / N_o and rho = d.
MrppInput mrpp_input_from(const ReliabilityMatrix& m, const DistanceSpec& d);

enum class Agreement { Slight, Fair, Moderate, Substantial, NearPerfect };

Agreement interpret(double alpha);
const char* to_string(Agreement a);

}  // namespace kalpha
