#pragma once

#include <memory>
#include <optional>
#include <string>

#include "kalpha/expr.hpp"

namespace kalpha {

enum class Level { Nominal, Ordinal, Interval, Ratio, Bipolar, Circular, Custom };

const char* to_string(Level level);

// Selects the squared distance d^2 used for disagreement. Built via the
// factory functions, which enforce the per-kind parameter invariants.
class DistanceSpec {
 public:
  static DistanceSpec nominal();
  // Scores are taken to be ranks already.
  static DistanceSpec ordinal();
  static DistanceSpec interval();
  static DistanceSpec ratio();
  // Requires min < max.
  static DistanceSpec bipolar(double min, double max);
  // Requires intervals >= 2.
  static DistanceSpec circular(int intervals);
  static DistanceSpec custom(ExprAst expr, std::string source = {});
  // Parses a level name ("nominal", "ordinal", "interval", "ratio").
  static DistanceSpec from_level_name(const std::string& name);

  Level level() const { return level_; }
  double bipolar_min() const { return bipolar_min_; }
  double bipolar_max() const { return bipolar_max_; }
  int circular_intervals() const { return circular_intervals_; }
  const ExprAst* expression() const { return expr_.get(); }

  // Human-readable description, e.g. "interval", "circular(I=4)",
  // "custom(abs(x-y))".
  std::string describe() const;

  // d^2 for two present scores. Built-ins return 0 whenever x == y.
  // Throws Error(DomainError) for ratio with a negative score or bipolar
  // scores outside [min, max]; Error(EvalError) from custom expressions.
  double operator()(double x, double y) const;

  // Missing-aware form: 0 if either score is absent.
  double operator()(const std::optional<double>& x,
                    const std::optional<double>& y) const;

 private:
  explicit DistanceSpec(Level level) : level_(level) {}

  Level level_;
  double bipolar_min_ = 0.0;
  double bipolar_max_ = 0.0;
  int circular_intervals_ = 0;
  std::shared_ptr<const ExprAst> expr_;
  std::string source_;
};

inline double evaluate_distance(const DistanceSpec& spec,
                                const std::optional<double>& x,
                                const std::optional<double>& y) {
  return spec(x, y);
}

}  // namespace kalpha
