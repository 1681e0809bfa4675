#include "nij/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace nij {

Chart Chart::tangent(int n) {
  std::vector<std::string> names;
  names.reserve(2 * n);
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  return Chart(std::move(names));
}

// ---------------------------------------------------------------------------
// Node construction

static std::shared_ptr<Expr> make(Expr::Kind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

ExprPtr Expr::constant(double c) {
  auto e = make(Kind::Const);
  e->cval = c;
  return e;
}

ExprPtr Expr::variable(int index, std::string name) {
  auto e = make(Kind::Var);
  e->var = index;
  e->var_name = std::move(name);
  return e;
}

ExprPtr Expr::neg(ExprPtr x) {
  auto e = make(Kind::Neg);
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = make(Kind::Binary);
  e->bop = op;
  e->a = std::move(lhs);
  e->b = std::move(rhs);
  return e;
}

ExprPtr Expr::pow(ExprPtr base, int exponent) {
  auto e = make(Kind::Pow);
  e->a = std::move(base);
  e->exponent = exponent;
  return e;
}

ExprPtr Expr::call(Fn f, ExprPtr arg) {
  auto e = make(Kind::Call);
  e->fn = f;
  e->a = std::move(arg);
  return e;
}

ExprPtr Expr::add(ExprPtr lhs, ExprPtr rhs) {
  if (lhs->is_const(0.0)) return rhs;
  if (rhs->is_const(0.0)) return lhs;
  if (lhs->kind == Kind::Const && rhs->kind == Kind::Const)
    return constant(lhs->cval + rhs->cval);
  return binary(BinOp::Add, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::sub(ExprPtr lhs, ExprPtr rhs) {
  if (rhs->is_const(0.0)) return lhs;
  if (lhs->kind == Kind::Const && rhs->kind == Kind::Const)
    return constant(lhs->cval - rhs->cval);
  if (lhs->is_const(0.0)) return neg(std::move(rhs));
  return binary(BinOp::Sub, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::mul(ExprPtr lhs, ExprPtr rhs) {
  if (lhs->is_const(0.0) || rhs->is_const(0.0)) return constant(0.0);
  if (lhs->is_const(1.0)) return rhs;
  if (rhs->is_const(1.0)) return lhs;
  if (lhs->kind == Kind::Const && rhs->kind == Kind::Const)
    return constant(lhs->cval * rhs->cval);
  return binary(BinOp::Mul, std::move(lhs), std::move(rhs));
}

// ---------------------------------------------------------------------------
// Evaluation

double eval_real(const Expr& e, const Eigen::VectorXd& point) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return e.cval;
    case Expr::Kind::Var:
      if (e.var < 0 || e.var >= point.size())
        throw EvalError("variable '" + e.var_name + "' outside chart of dimension " +
                        std::to_string(point.size()));
      return point[e.var];
    case Expr::Kind::Neg:
      return -eval_real(*e.a, point);
    case Expr::Kind::Binary: {
      const double l = eval_real(*e.a, point);
      const double r = eval_real(*e.b, point);
      switch (e.bop) {
        case BinOp::Add: return l + r;
        case BinOp::Sub: return l - r;
        case BinOp::Mul: return l * r;
        case BinOp::Div:
          if (r == 0.0) throw EvalError("division by zero in '" + to_string(e) + "'");
          return l / r;
      }
      break;
    }
    case Expr::Kind::Pow: {
      const double b = eval_real(*e.a, point);
      if (b == 0.0 && e.exponent < 0)
        throw EvalError("negative power of zero in '" + to_string(e) + "'");
      double r = 1.0, base = b;
      bool inv = e.exponent < 0;
      for (unsigned k = inv ? -static_cast<unsigned>(e.exponent) : e.exponent; k; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
      }
      return inv ? 1.0 / r : r;
    }
    case Expr::Kind::Call: {
      const double u = eval_real(*e.a, point);
      switch (e.fn) {
        case Fn::Sin: return std::sin(u);
        case Fn::Cos: return std::cos(u);
        case Fn::Exp: return std::exp(u);
        case Fn::Log:
          if (u <= 0.0)
            throw EvalError("log of non-positive value in '" + to_string(e) + "'");
          return std::log(u);
      }
      break;
    }
  }
  throw EvalError("malformed expression node");
}

Jet2 eval_jet(const Expr& e, const Eigen::VectorXd& point) {
  const int n = static_cast<int>(point.size());
  switch (e.kind) {
    case Expr::Kind::Const:
      return Jet2::constant(e.cval, n);
    case Expr::Kind::Var:
      if (e.var < 0 || e.var >= n)
        throw EvalError("variable '" + e.var_name + "' outside chart of dimension " +
                        std::to_string(n));
      return Jet2::variable(e.var, point);
    case Expr::Kind::Neg:
      return -eval_jet(*e.a, point);
    case Expr::Kind::Binary: {
      Jet2 l = eval_jet(*e.a, point);
      Jet2 r = eval_jet(*e.b, point);
      switch (e.bop) {
        case BinOp::Add: return l + r;
        case BinOp::Sub: return l - r;
        case BinOp::Mul: return l * r;
        case BinOp::Div:
          if (r.value == 0.0)
            throw EvalError("division by zero in '" + to_string(e) + "'");
          return l / r;
      }
      break;
    }
    case Expr::Kind::Pow: {
      Jet2 b = eval_jet(*e.a, point);
      if (b.value == 0.0 && e.exponent < 0)
        throw EvalError("negative power of zero in '" + to_string(e) + "'");
      return pow_int(b, e.exponent);
    }
    case Expr::Kind::Call: {
      Jet2 u = eval_jet(*e.a, point);
      switch (e.fn) {
        case Fn::Sin: return sin(u);
        case Fn::Cos: return cos(u);
        case Fn::Exp: return exp(u);
        case Fn::Log:
          if (u.value <= 0.0)
            throw EvalError("log of non-positive value in '" + to_string(e) + "'");
          return log(u);
      }
      break;
    }
  }
  throw EvalError("malformed expression node");
}

// ---------------------------------------------------------------------------
// Printing

static const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
  }
  return "?";
}

static std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Precedence: additive 1, multiplicative 2, unary minus 3, power 4, atoms 5.
static int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      return (e.bop == BinOp::Add || e.bop == BinOp::Sub) ? 1 : 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Const:
      return e.cval < 0 ? 3 : 5;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

static void print(const Expr& e, std::string& out);

// Left-associative reparse reproduces the tree exactly when the left child of
// a binary node may share its precedence but the right child must bind tighter.
static void print_child(const Expr& c, int parent_prec, bool allow_equal, std::string& out) {
  const bool wrap = allow_equal ? prec(c) < parent_prec : prec(c) <= parent_prec;
  if (wrap) out += '(';
  print(c, out);
  if (wrap) out += ')';
}

static void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Const:
      out += format_number(e.cval);
      return;
    case Expr::Kind::Var:
      out += e.var_name;
      return;
    case Expr::Kind::Neg:
      out += '-';
      print_child(*e.a, 3, true, out);
      return;
    case Expr::Kind::Binary: {
      const int p = prec(e);
      print_child(*e.a, p, true, out);
      switch (e.bop) {
        case BinOp::Add: out += " + "; break;
        case BinOp::Sub: out += " - "; break;
        case BinOp::Mul: out += "*"; break;
        case BinOp::Div: out += "/"; break;
      }
      print_child(*e.b, p, false, out);
      return;
    }
    case Expr::Kind::Pow:
      print_child(*e.a, 4, false, out);
      out += '^';
      out += std::to_string(e.exponent);
      return;
    case Expr::Kind::Call:
      out += fn_name(e.fn);
      out += '(';
      print(*e.a, out);
      out += ')';
      return;
  }
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic derivative and substitution

ExprPtr differentiate(const Expr& e, int var) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return Expr::constant(0.0);
    case Expr::Kind::Var:
      return Expr::constant(e.var == var ? 1.0 : 0.0);
    case Expr::Kind::Neg: {
      auto da = differentiate(*e.a, var);
      if (da->is_const(0.0)) return da;
      return Expr::neg(std::move(da));
    }
    case Expr::Kind::Binary: {
      auto da = differentiate(*e.a, var);
      auto db = differentiate(*e.b, var);
      switch (e.bop) {
        case BinOp::Add: return Expr::add(std::move(da), std::move(db));
        case BinOp::Sub: return Expr::sub(std::move(da), std::move(db));
        case BinOp::Mul:
          return Expr::add(Expr::mul(std::move(da), e.b), Expr::mul(e.a, std::move(db)));
        case BinOp::Div: {
          auto num = Expr::sub(Expr::mul(std::move(da), e.b), Expr::mul(e.a, std::move(db)));
          if (num->is_const(0.0)) return num;
          return Expr::binary(BinOp::Div, std::move(num), Expr::pow(e.b, 2));
        }
      }
      break;
    }
    case Expr::Kind::Pow: {
      if (e.exponent == 0) return Expr::constant(0.0);
      auto da = differentiate(*e.a, var);
      if (da->is_const(0.0)) return da;
      auto inner = e.exponent == 2 ? e.a : Expr::pow(e.a, e.exponent - 1);
      return Expr::mul(Expr::constant(e.exponent),
                       Expr::mul(e.exponent == 1 ? Expr::constant(1.0) : std::move(inner),
                                 std::move(da)));
    }
    case Expr::Kind::Call: {
      auto da = differentiate(*e.a, var);
      if (da->is_const(0.0)) return da;
      switch (e.fn) {
        case Fn::Sin: return Expr::mul(Expr::call(Fn::Cos, e.a), std::move(da));
        case Fn::Cos: return Expr::neg(Expr::mul(Expr::call(Fn::Sin, e.a), std::move(da)));
        case Fn::Exp: return Expr::mul(Expr::call(Fn::Exp, e.a), std::move(da));
        case Fn::Log: return Expr::binary(BinOp::Div, std::move(da), e.a);
      }
      break;
    }
  }
  throw EvalError("malformed expression node");
}

ExprPtr substitute(const Expr& e, const std::function<ExprPtr(int, const std::string&)>& map) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return Expr::constant(e.cval);
    case Expr::Kind::Var:
      return map(e.var, e.var_name);
    case Expr::Kind::Neg:
      return Expr::neg(substitute(*e.a, map));
    case Expr::Kind::Binary:
      return Expr::binary(e.bop, substitute(*e.a, map), substitute(*e.b, map));
    case Expr::Kind::Pow:
      return Expr::pow(substitute(*e.a, map), e.exponent);
    case Expr::Kind::Call:
      return Expr::call(e.fn, substitute(*e.a, map));
  }
  throw EvalError("malformed expression node");
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr int kMaxDepth = 256;

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : src_(text), chart_(chart) {}

  ExprPtr run() {
    skip_ws();
    if (pos_ >= src_.size())
      throw ParseError("empty expression", {0, src_.size()});
    auto e = expr(0);
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError("unexpected trailing input", {pos_, src_.size()});
    return e;
  }

 private:
  std::string_view src_;
  const Chart& chart_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t start) {
    throw ParseError(msg, {start, std::min(pos_ + 1, src_.size())});
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void check_depth(int depth) {
    if (depth > kMaxDepth) fail("expression too deeply nested", pos_);
  }

  ExprPtr expr(int depth) {
    check_depth(depth);
    auto lhs = term(depth + 1);
    while (true) {
      if (eat('+'))
        lhs = with_span(Expr::binary(BinOp::Add, lhs, term(depth + 1)), lhs->span.start);
      else if (eat('-'))
        lhs = with_span(Expr::binary(BinOp::Sub, lhs, term(depth + 1)), lhs->span.start);
      else
        return lhs;
    }
  }

  ExprPtr term(int depth) {
    check_depth(depth);
    auto lhs = factor(depth + 1);
    while (true) {
      if (eat('*'))
        lhs = with_span(Expr::binary(BinOp::Mul, lhs, factor(depth + 1)), lhs->span.start);
      else if (eat('/'))
        lhs = with_span(Expr::binary(BinOp::Div, lhs, factor(depth + 1)), lhs->span.start);
      else
        return lhs;
    }
  }

  ExprPtr factor(int depth) {
    check_depth(depth);
    skip_ws();
    const std::size_t start = pos_;
    if (eat('-')) return with_span(Expr::neg(factor(depth + 1)), start);
    auto base = atom(depth + 1);
    if (eat('^')) return with_span(Expr::pow(base, integer_literal()), start);
    return base;
  }

  int integer_literal() {
    skip_ws();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == digits) fail("exponent not an integer literal", start);
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
      fail("exponent not an integer literal", start);
    int value = 0;
    std::from_chars(src_.data() + digits, src_.data() + pos_, value);
    return neg ? -value : value;
  }

  ExprPtr atom(int depth) {
    check_depth(depth);
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of input", start);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr(depth + 1);
      if (!eat(')')) fail("expected ')'", start);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier(depth, start);
    fail(std::string("unexpected character '") + c + "'", start);
  }

  ExprPtr number(std::size_t start) {
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    double value = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_)
      fail("malformed number", start);
    return with_span(Expr::constant(value), start);
  }

  ExprPtr identifier(int depth, std::size_t start) {
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (peek() == '(') {
      Fn fn;
      if (name == "sin") fn = Fn::Sin;
      else if (name == "cos") fn = Fn::Cos;
      else if (name == "exp") fn = Fn::Exp;
      else if (name == "log") fn = Fn::Log;
      else fail("unknown function '" + name + "'", start);
      eat('(');
      auto arg = expr(depth + 1);
      if (!eat(')')) fail("expected ')'", start);
      return with_span(Expr::call(fn, std::move(arg)), start);
    }
    const int idx = chart_.index_of(name);
    if (idx < 0) fail("unknown identifier '" + name + "'", start);
    return with_span(Expr::variable(idx, std::move(name)), start);
  }

  ExprPtr with_span(ExprPtr e, std::size_t start) {
    // Nodes are freshly built and uniquely owned here.
    const_cast<Expr*>(e.get())->span = {start, pos_};
    return e;
  }
};

}  // namespace

ExprPtr parse(std::string_view text, const Chart& chart) {
  return Parser(text, chart).run();
}

}  // namespace nij
