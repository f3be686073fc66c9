#include "kalpha/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kalpha/error.hpp"

namespace kalpha {

namespace {

struct FunctionInfo {
  std::string_view name;
  ExprOp op;
  int arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions{{
    {"abs", ExprOp::Abs, 1},
    {"min", ExprOp::Min, 2},
    {"max", ExprOp::Max, 2},
    {"sqrt", ExprOp::Sqrt, 1},
    {"sin", ExprOp::Sin, 1},
    {"cos", ExprOp::Cos, 1},
    {"exp", ExprOp::Exp, 1},
    {"log", ExprOp::Log, 1},
}};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const FunctionInfo* find_function(ExprOp op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return &f;
  }
  return nullptr;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  ExprAst run() {
    skip_space();
    if (at_end()) fail(pos_, "atom", "empty expression");
    parse_additive();
    skip_space();
    if (!at_end()) fail(pos_, "operator or end of input", "unexpected '" + std::string(1, peek()) + "'");
    return std::move(ast_);
  }

 private:
  [[noreturn]] void fail(std::size_t at, std::string expectation, const std::string& what) {
    throw ParseError(ErrorCode::ParseError, at, expectation,
                     what + ", expected " + expectation);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_space() {
    while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                         src_[pos_] == '\r')) {
      ++pos_;
    }
  }
  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, const char* expectation) {
    skip_space();
    if (peek() != c) {
      fail(pos_, expectation,
           at_end() ? std::string("unexpected end of input")
                    : "unexpected '" + std::string(1, peek()) + "'");
    }
    ++pos_;
  }

  int push(ExprOp op, int lhs = -1, int rhs = -1, double value = 0.0) {
    ast_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(ast_.nodes_.size()) - 1;
  }

  int parse_additive() {
    int lhs = parse_multiplicative();
    for (;;) {
      if (accept('+')) {
        lhs = push(ExprOp::Add, lhs, parse_multiplicative());
      } else if (accept('-')) {
        lhs = push(ExprOp::Sub, lhs, parse_multiplicative());
      } else {
        return lhs;
      }
    }
  }

  int parse_multiplicative() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = push(ExprOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = push(ExprOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return push(ExprOp::Negate, parse_unary());
    return parse_power();
  }

  int parse_power() {
    const int base = parse_atom();
    if (accept('^')) return push(ExprOp::Pow, base, parse_unary());
    return base;
  }

  int parse_atom() {
    skip_space();
    const std::size_t start = pos_;
    if (at_end()) fail(pos_, "atom", "unexpected end of input");
    const char c = peek();

    if (c == '(') {
      ++pos_;
      const int inner = parse_additive();
      expect(')', "')'");
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) {
      while (!at_end() && is_ident_char(src_[pos_])) ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "x") return push(ExprOp::VarX);
      if (name == "y") return push(ExprOp::VarY);
      if (name == "pi") return push(ExprOp::Pi);
      const FunctionInfo* fn = find_function(name);
      if (fn == nullptr) {
        throw ParseError(ErrorCode::UnknownIdentifier, start, "x, y, pi or a function name",
                         "unknown identifier '" + std::string(name) + "'");
      }
      expect('(', "'('");
      const int a = parse_additive();
      int b = -1;
      if (fn->arity == 2) {
        expect(',', "','");
        b = parse_additive();
      }
      expect(')', "')'");
      return push(fn->op, a, b);
    }
    fail(pos_, "atom", "unexpected '" + std::string(1, c) + "'");
  }

  int parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
    }
    if (pos_ - start == 1 && src_[start] == '.') fail(start, "number", "lone '.'");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p >= src_.size() || !is_digit(src_[p])) fail(p, "exponent digits", "malformed exponent");
      while (p < src_.size() && is_digit(src_[p])) ++p;
      pos_ = p;
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail(start, "finite number", "bad numeric literal '" + std::string(first, last) + "'");
    }
    return push(ExprOp::Number, -1, -1, value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  ExprAst ast_;
};

ExprAst parse_expression(std::string_view source) { return ExprParser(source).run(); }

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::EvalError, std::string(what) + " produced a non-finite value");
  }
  return v;
}

double eval_node(std::span<const ExprAst::Node> nodes, int i, double x, double y) {
  const auto& n = nodes[i];
  auto arg = [&](int k) { return eval_node(nodes, k, x, y); };
  switch (n.op) {
    case ExprOp::Number: return n.value;
    case ExprOp::VarX: return x;
    case ExprOp::VarY: return y;
    case ExprOp::Pi: return std::numbers::pi;
    case ExprOp::Negate: return -arg(n.lhs);
    case ExprOp::Add: return checked(arg(n.lhs) + arg(n.rhs), "addition");
    case ExprOp::Sub: return checked(arg(n.lhs) - arg(n.rhs), "subtraction");
    case ExprOp::Mul: return checked(arg(n.lhs) * arg(n.rhs), "multiplication");
    case ExprOp::Div: return checked(arg(n.lhs) / arg(n.rhs), "division");
    case ExprOp::Pow: {
      const double base = arg(n.lhs);
      const double exponent = arg(n.rhs);
      // Squares are the common case; a plain product is exactly rounded.
      if (exponent == 2.0) return checked(base * base, "power");
      return checked(std::pow(base, exponent), "power");
    }
    case ExprOp::Abs: return std::abs(arg(n.lhs));
    case ExprOp::Sqrt: return checked(std::sqrt(arg(n.lhs)), "sqrt");
    case ExprOp::Sin: return std::sin(arg(n.lhs));
    case ExprOp::Cos: return std::cos(arg(n.lhs));
    case ExprOp::Exp: return checked(std::exp(arg(n.lhs)), "exp");
    case ExprOp::Log: {
      const double v = arg(n.lhs);
      if (!(v > 0.0)) {
        throw Error(ErrorCode::EvalError, "log of non-positive argument " + std::to_string(v));
      }
      return std::log(v);
    }
    case ExprOp::Min: return std::min(arg(n.lhs), arg(n.rhs));
    case ExprOp::Max: return std::max(arg(n.lhs), arg(n.rhs));
  }
  return 0.0;
}

void print_node(std::span<const ExprAst::Node> nodes, int i, std::string& out) {
  const auto& n = nodes[i];
  auto binary = [&](const char* op) {
    out += '(';
    print_node(nodes, n.lhs, out);
    out += op;
    print_node(nodes, n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case ExprOp::Number: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, res.ptr);
      return;
    }
    case ExprOp::VarX: out += 'x'; return;
    case ExprOp::VarY: out += 'y'; return;
    case ExprOp::Pi: out += "pi"; return;
    case ExprOp::Negate:
      out += "(-";
      print_node(nodes, n.lhs, out);
      out += ')';
      return;
    case ExprOp::Add: binary(" + "); return;
    case ExprOp::Sub: binary(" - "); return;
    case ExprOp::Mul: binary(" * "); return;
    case ExprOp::Div: binary(" / "); return;
    case ExprOp::Pow: binary(" ^ "); return;
    default: {
      const FunctionInfo* fn = find_function(n.op);
      out += fn->name;
      out += '(';
      print_node(nodes, n.lhs, out);
      if (fn->arity == 2) {
        out += ", ";
        print_node(nodes, n.rhs, out);
      }
      out += ')';
      return;
    }
  }
}

bool same_tree(std::span<const ExprAst::Node> a, int i, std::span<const ExprAst::Node> b, int j) {
  if (i < 0 || j < 0) return i == j;
  const auto& na = a[i];
  const auto& nb = b[j];
  if (na.op != nb.op) return false;
  if (na.op == ExprOp::Number && na.value != nb.value) return false;
  return same_tree(a, na.lhs, b, nb.lhs) && same_tree(a, na.rhs, b, nb.rhs);
}

}  // namespace

double ExprAst::evaluate(double x, double y) const {
  return eval_node(nodes_, root_index(), x, y);
}

std::string ExprAst::to_string() const {
  std::string out;
  print_node(nodes_, root_index(), out);
  return out;
}

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.nodes_.empty() || b.nodes_.empty()) return a.nodes_.empty() && b.nodes_.empty();
  return same_tree(a.nodes_, a.root_index(), b.nodes_, b.root_index());
}

const char* to_string(DistanceViolation::Kind kind) {
  switch (kind) {
    case DistanceViolation::Kind::Asymmetric: return "asymmetric";
    case DistanceViolation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
    case DistanceViolation::Kind::Negative: return "negative";
    case DistanceViolation::Kind::EvalFailure: return "eval-failure";
  }
  return "unknown";
}

DistanceDiagnostics validate_distance(const ExprAst& ast, std::span<const double> probe_grid) {
  DistanceDiagnostics diag;
  if (probe_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "probe grid must not be empty");
  }
  constexpr double kTol = 1e-12;
  auto describe = [](double x, double y) {
    std::ostringstream os;
    os << "d(" << x << ", " << y << ")";
    return os.str();
  };
  auto eval = [&](double x, double y, double& out) {
    try {
      out = ast.evaluate(x, y);
      return true;
    } catch (const Error& e) {
      diag.violations.push_back({DistanceViolation::Kind::EvalFailure, x, y, 0.0, 0.0,
                                 describe(x, y) + ": " + e.what()});
      return false;
    }
  };

  for (std::size_t i = 0; i < probe_grid.size(); ++i) {
    for (std::size_t j = i; j < probe_grid.size(); ++j) {
      const double x = probe_grid[i];
      const double y = probe_grid[j];
      double fxy = 0.0;
      if (!eval(x, y, fxy)) continue;
      if (i == j) {
        if (std::abs(fxy) > kTol) {
          std::ostringstream os;
          os << describe(x, x) << " = " << fxy << ", expected 0";
          diag.violations.push_back(
              {DistanceViolation::Kind::NonzeroDiagonal, x, x, fxy, 0.0, os.str()});
        }
        continue;
      }
      double fyx = 0.0;
      if (!eval(y, x, fyx)) continue;
      const double scale = std::max({1.0, std::abs(fxy), std::abs(fyx)});
      if (std::abs(fxy - fyx) > kTol * scale) {
        std::ostringstream os;
        os << describe(x, y) << " = " << fxy << " but " << describe(y, x) << " = " << fyx;
        diag.violations.push_back({DistanceViolation::Kind::Asymmetric, x, y, fxy, fyx, os.str()});
      }
      for (const auto& [a, b, v] : {std::tuple{x, y, fxy}, std::tuple{y, x, fyx}}) {
        if (v < 0.0) {
          std::ostringstream os;
          os << describe(a, b) << " = " << v << " is negative";
          diag.violations.push_back({DistanceViolation::Kind::Negative, a, b, v, 0.0, os.str()});
        }
      }
    }
  }
  return diag;
}

}  // namespace kalpha
