#include <doctest.h>

#include "helpers.hpp"
#include "nij/expr.hpp"

using namespace nij;

namespace {
Chart xy() { return Chart({"x", "y"}); }
}  // namespace

TEST_CASE("parse and evaluate basic expressions") {
  Chart c = xy();
  Eigen::VectorXd p(2);
  p << 2.0, 3.0;
  CHECK(eval_real(*parse("x*y + 1", c), p) == 7.0);
  CHECK(eval_real(*parse("x^2 - 1", c), p) == 3.0);
  CHECK(eval_real(*parse("-x^2", c), p) == -4.0);   // unary minus binds looser than ^
  CHECK(eval_real(*parse("2*x - y/3", c), p) == doctest::Approx(3.0));
  CHECK(eval_real(*parse("sin(x)*cos(y) + exp(0)", c), p) ==
        doctest::Approx(std::sin(2.0) * std::cos(3.0) + 1.0));
  CHECK(eval_real(*parse("x^-1", c), p) == 0.5);
  CHECK(eval_real(*parse("log(x)", c), p) == doctest::Approx(std::log(2.0)));
  CHECK(eval_real(*parse("((x))", c), p) == 2.0);
  CHECK(eval_real(*parse("1.5e2 + x", c), p) == 152.0);
}

TEST_CASE("eval_jet value channel matches eval_real") {
  Chart c = xy();
  nijtest::ExprGen gen(c, 99);
  for (int trial = 0; trial < 50; ++trial) {
    ExprPtr e = gen.gen();
    Eigen::VectorXd p = gen.point();
    try {
      double v = eval_real(*e, p);
      CHECK(eval_jet(*e, p).value == v);
    } catch (const EvalError&) {
      CHECK_THROWS_AS(eval_jet(*e, p), EvalError);
    }
  }
}

TEST_CASE("parse errors carry useful messages and spans") {
  Chart c = xy();
  struct Case {
    const char* text;
    const char* needle;
  };
  const Case cases[] = {
      {"x + ", "expected"},
      {"x + * y", "expected"},
      {"(x", ")"},
      {"z + 1", "unknown identifier"},
      {"tan(x)", "unknown function"},
      {"x ^ y", "exponent not an integer literal"},
      {"x ^ 1.5", "exponent not an integer literal"},
      {"x 2", "unexpected"},
      {"", "empty"},
      {"sin()", "expected"},
      {"1..2", "malformed number"},
  };
  for (const auto& tc : cases) {
    CAPTURE(tc.text);
    try {
      parse(tc.text, c);
      FAIL_CHECK("expected ParseError for: " << tc.text);
    } catch (const ParseError& err) {
      CHECK(std::string(err.what()).find(tc.needle) != std::string::npos);
      CHECK(err.span.start <= err.span.end);
      CHECK(err.span.end <= std::string(tc.text).size() + 1);
    }
  }
}

TEST_CASE("nesting depth is bounded") {
  Chart c = xy();
  std::string deep(400, '(');
  deep += "x";
  deep += std::string(400, ')');
  CHECK_THROWS_AS(parse(deep, c), ParseError);
  std::string ok(50, '(');
  ok += "x";
  ok += std::string(50, ')');
  CHECK_NOTHROW(parse(ok, c));
}

TEST_CASE("pretty-printing round-trips exactly") {
  Chart c = nijtest::chart_n(3);
  nijtest::ExprGen gen(c, 31337, 5);
  for (int trial = 0; trial < 200; ++trial) {
    ExprPtr e = gen.gen();
    std::string s = to_string(*e);
    ExprPtr back = parse(s, c);
    CHECK(to_string(*back) == s);  // printing is a fixed point
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd p = gen.point();
      double a, b;
      bool ea = false, eb = false;
      try {
        a = eval_real(*e, p);
      } catch (const EvalError&) {
        ea = true;
      }
      try {
        b = eval_real(*back, p);
      } catch (const EvalError&) {
        eb = true;
      }
      CHECK(ea == eb);
      if (!ea && !eb) CHECK(a == b);  // exact: same tree, same operations
    }
  }
}

TEST_CASE("precedence in printed output") {
  Chart c = xy();
  ExprPtr e = Expr::binary(BinOp::Mul, Expr::binary(BinOp::Add, parse("x", c), parse("y", c)),
                           parse("x", c));
  CHECK(to_string(*e) == "(x + y)*x");
  ExprPtr f = Expr::binary(BinOp::Sub, parse("x", c),
                           Expr::binary(BinOp::Sub, parse("y", c), parse("x", c)));
  CHECK(to_string(*f) == "x - (y - x)");
  CHECK(eval_real(*parse(to_string(*f), c), Eigen::Vector2d(5, 2)) == 8.0);
}

TEST_CASE("symbolic differentiation matches jets") {
  Chart c = nijtest::chart_n(2);
  nijtest::ExprGen gen(c, 555);
  int checked = 0;
  while (checked < 30) {
    ExprPtr e = gen.gen();
    Eigen::VectorXd p = gen.point(1.0);
    try {
      Jet2 j = eval_jet(*e, p);
      if (!std::isfinite(j.value) || j.grad.cwiseAbs().maxCoeff() > 1e6) continue;
      for (int a = 0; a < 2; ++a) {
        double d = eval_real(*differentiate(*e, a), p);
        CHECK(nijtest::rel_err(d, j.grad[a]) <= 1e-12);
      }
      ++checked;
    } catch (const EvalError&) {
    }
  }
}

TEST_CASE("substitute pins variables to constants") {
  Chart c = xy();
  ExprPtr e = parse("x^2 + x*y", c);
  ExprPtr pinned = substitute(*e, [](int idx, const std::string& name) -> ExprPtr {
    if (name == "y") return Expr::constant(3.0);
    return Expr::variable(idx, name);
  });
  Eigen::VectorXd p(2);
  p << 2.0, 100.0;  // y slot ignored after pinning
  CHECK(eval_real(*pinned, p) == 10.0);
}

TEST_CASE("tangent chart names") {
  Chart t = Chart::tangent(2);
  REQUIRE(t.dim() == 4);
  CHECK(t.names == std::vector<std::string>{"x1", "x2", "v1", "v2"});
  CHECK(t.index_of("v2") == 3);
  CHECK(t.index_of("w1") == -1);
}
