#pragma once

// Distance expressions in two variables, e.g. "abs(x-y)" or
// "sin(pi*(x-y)/4)^2".
//
// Grammar, lowest to highest precedence:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?          right-associative
//   atom    := number | 'x' | 'y' | 'pi' | func '(' args ')' | '(' expr ')'
//   func    := abs | sqrt | sin | cos | exp | log     (one argument)
//            | min | max                              (two arguments)
// Numbers accept decimal and scientific notation ("3", ".5", "2.5e-3").

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kalpha {

enum class ExprOp : std::uint8_t {
  Number,
  VarX,
  VarY,
  Pi,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Abs,
  Sqrt,
  Sin,
  Cos,
  Exp,
  Log,
  Min,
  Max,
};

// Immutable expression tree stored as a flat node array; children always
// precede their parent, and the last node is the root.
class ExprAst {
 public:
  struct Node {
    ExprOp op;
    double value = 0.0;  // Number only
    int lhs = -1;
    int rhs = -1;
  };

  std::span<const Node> nodes() const { return nodes_; }
  const Node& root() const { return nodes_.back(); }
  int root_index() const { return static_cast<int>(nodes_.size()) - 1; }

  // Throws Error(EvalError) on log of a non-positive argument or any
  // non-finite intermediate result.
  double evaluate(double x, double y) const;

  // Fully parenthesized text that parses back to an identical tree.
  std::string to_string() const;

  // Structural equality (same shape, same operators, same literals).
  friend bool operator==(const ExprAst& a, const ExprAst& b);

 private:
  friend class ExprParser;
  std::vector<Node> nodes_;
};

// Throws ParseError (code ParseError or UnknownIdentifier).
ExprAst parse_expression(std::string_view source);

struct DistanceViolation {
  enum class Kind { Asymmetric, NonzeroDiagonal, Negative, EvalFailure };
  Kind kind;
  double x;
  double y;
  double value;        // d(x, y)
  double mirrored = 0;  // d(y, x), Asymmetric only
  std::string message;
};

struct DistanceDiagnostics {
  std::vector<DistanceViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Probes the Cartesian square of grid for symmetry, a zero diagonal and
// non-negativity. Never throws on expression problems; they are reported.
DistanceDiagnostics validate_distance(const ExprAst& ast,
                                      std::span<const double> probe_grid);

const char* to_string(DistanceViolation::Kind kind);

}  // namespace kalpha
