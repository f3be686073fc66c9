#include "kalpha/distance.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "kalpha/error.hpp"

namespace kalpha {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* to_string(Level level) {
  switch (level) {
    case Level::Nominal: return "nominal";
    case Level::Ordinal: return "ordinal";
    case Level::Interval: return "interval";
    case Level::Ratio: return "ratio";
    case Level::Bipolar: return "bipolar";
    case Level::Circular: return "circular";
    case Level::Custom: return "custom";
  }
  return "unknown";
}

DistanceSpec DistanceSpec::nominal() { return DistanceSpec(Level::Nominal); }
DistanceSpec DistanceSpec::ordinal() { return DistanceSpec(Level::Ordinal); }
DistanceSpec DistanceSpec::interval() { return DistanceSpec(Level::Interval); }
DistanceSpec DistanceSpec::ratio() { return DistanceSpec(Level::Ratio); }

DistanceSpec DistanceSpec::bipolar(double min, double max) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw Error(ErrorCode::InvalidArgument, "bipolar distance needs finite min < max");
  }
  DistanceSpec spec(Level::Bipolar);
  spec.bipolar_min_ = min;
  spec.bipolar_max_ = max;
  return spec;
}

DistanceSpec DistanceSpec::circular(int intervals) {
  if (intervals < 2) {
    throw Error(ErrorCode::InvalidArgument, "circular distance needs at least 2 intervals");
  }
  DistanceSpec spec(Level::Circular);
  spec.circular_intervals_ = intervals;
  return spec;
}

DistanceSpec DistanceSpec::custom(ExprAst expr, std::string source) {
  DistanceSpec spec(Level::Custom);
  if (source.empty()) source = expr.to_string();
  spec.expr_ = std::make_shared<const ExprAst>(std::move(expr));
  spec.source_ = std::move(source);
  return spec;
}

DistanceSpec DistanceSpec::from_level_name(const std::string& name) {
  if (name == "nominal") return nominal();
  if (name == "ordinal") return ordinal();
  if (name == "interval") return interval();
  if (name == "ratio") return ratio();
  if (name == "bipolar" || name == "circular") {
    throw Error(ErrorCode::InvalidArgument, "level '" + name + "' needs parameters");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown level '" + name + "'");
}

std::string DistanceSpec::describe() const {
  switch (level_) {
    case Level::Bipolar: {
      return "bipolar(min=" + shortest(bipolar_min_) + ",max=" + shortest(bipolar_max_) + ")";
    }
    case Level::Circular:
      return "circular(I=" + std::to_string(circular_intervals_) + ")";
    case Level::Custom:
      return "custom(" + source_ + ")";
    default:
      return to_string(level_);
  }
}

double DistanceSpec::operator()(double x, double y) const {
  if (level_ == Level::Custom) return expr_->evaluate(x, y);

  if (level_ == Level::Ratio && (x < 0.0 || y < 0.0)) {
    throw Error(ErrorCode::DomainError, "ratio distance needs non-negative scores, got (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  if (level_ == Level::Bipolar &&
      (x < bipolar_min_ || x > bipolar_max_ || y < bipolar_min_ || y > bipolar_max_)) {
    throw Error(ErrorCode::DomainError, "bipolar distance needs scores in [" +
                                            std::to_string(bipolar_min_) + ", " +
                                            std::to_string(bipolar_max_) + "], got (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  if (x == y) return 0.0;

  const double diff = x - y;
  switch (level_) {
    case Level::Nominal:
      return 1.0;
    case Level::Ordinal:
    case Level::Interval:
      return diff * diff;
    case Level::Ratio: {
      const double r = diff / (x + y);
      return r * r;
    }
    case Level::Bipolar: {
      const double sum = x + y;
      return diff * diff / ((sum - 2.0 * bipolar_min_) * (2.0 * bipolar_max_ - sum));
    }
    case Level::Circular: {
      const double s = std::sin(std::numbers::pi * diff / circular_intervals_);
      return s * s;
    }
    case Level::Custom:
      break;
  }
  return 0.0;
}

double DistanceSpec::operator()(const std::optional<double>& x,
                                const std::optional<double>& y) const {
  if (!x || !y) return 0.0;
  return (*this)(*x, *y);
}

}  // namespace kalpha
