#ifndef NIJ_EXPR_HPP
#define NIJ_EXPR_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nij/jet.hpp"

namespace nij {

/// Byte range into the source text of a parsed expression.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct ParseError : std::runtime_error {
  SourceSpan span;
  ParseError(const std::string& what, SourceSpan s)
      : std::runtime_error(what), span(s) {}
};

/// Named coordinates of a local chart. Names are case-sensitive and fixed per
/// problem; variable references resolve against them at parse time.
struct Chart {
  std::vector<std::string> names;

  Chart() = default;
  explicit Chart(std::vector<std::string> n) : names(std::move(n)) {}

  int dim() const { return static_cast<int>(names.size()); }

  int index_of(std::string_view name) const {
    for (int i = 0; i < dim(); ++i)
      if (names[i] == name) return i;
    return -1;
  }

  bool operator==(const Chart&) const = default;

  /// Chart of the tangent bundle over an n-dimensional chart. Coordinate
  /// names are fixed as x1..xn (base) followed by v1..vn (velocities) so that
  /// lifted objects can be referenced from problem files.
  static Chart tangent(int n);
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp { Add, Sub, Mul, Div };
enum class Fn { Sin, Cos, Exp, Log };

/// Immutable AST node of the scalar expression DSL. Nodes are shared freely;
/// nothing mutates them after construction.
class Expr {
 public:
  enum class Kind { Const, Var, Neg, Binary, Pow, Call };

  Kind kind;
  double cval = 0.0;        // Const
  int var = -1;             // Var: chart index
  std::string var_name;     // Var: display name
  BinOp bop = BinOp::Add;   // Binary
  Fn fn = Fn::Sin;          // Call
  int exponent = 0;         // Pow
  ExprPtr a, b;             // children
  SourceSpan span;

  static ExprPtr constant(double c);
  static ExprPtr variable(int index, std::string name);
  static ExprPtr neg(ExprPtr e);
  static ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr pow(ExprPtr base, int exponent);
  static ExprPtr call(Fn f, ExprPtr arg);

  // Folding constructors used by the symbolic differentiator; they drop
  // additive zeros and multiplicative ones so lifted expressions stay small.
  static ExprPtr add(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr sub(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr mul(ExprPtr lhs, ExprPtr rhs);

  bool is_const(double c) const { return kind == Kind::Const && cval == c; }
};

double eval_real(const Expr& e, const Eigen::VectorXd& point);
Jet2 eval_jet(const Expr& e, const Eigen::VectorXd& point);

std::string to_string(const Expr& e);

/// Symbolic partial derivative with respect to chart coordinate `var`.
ExprPtr differentiate(const Expr& e, int var);

/// Rewrites every variable node through `map` (new variable, constant pin, ...).
ExprPtr substitute(const Expr& e, const std::function<ExprPtr(int, const std::string&)>& map);

/// Parses the expression grammar
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | atom ("^" integer)?
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
/// with functions sin, cos, exp, log. Identifiers must name chart coordinates.
ExprPtr parse(std::string_view text, const Chart& chart);

}  // namespace nij

#endif
