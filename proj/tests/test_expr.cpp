#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "jetcalc/expr.hpp"
#include "jetcalc/rational.hpp"

using namespace jetcalc;

namespace {
Rat eval_rat_expr(const std::string& src, const std::map<std::string, Rat>& env) {
  return eval_expr(parse_expr(src), env, Rat(1), [](const Rat& r) { return r.inv(); });
}
}  // namespace

TEST_CASE("precedence and associativity") {
  std::map<std::string, Rat> env{{"x", Rat(2)}, {"y", Rat(3)}};
  // power binds tighter than product
  CHECK(eval_rat_expr("x^2 + 3*x*y", env) == Rat(4 + 18));
  // literal quotients act as rational coefficients
  CHECK(eval_rat_expr("1/2*x", env) == Rat(1));
  // left associativity of subtraction and division
  CHECK(eval_rat_expr("8 - 3 - 2", {}) == Rat(3));
  CHECK(eval_rat_expr("8/4/2", {}) == Rat(1));
  // unary minus sits between power and product
  CHECK(eval_rat_expr("-x^2", env) == Rat(-4));
  CHECK(eval_rat_expr("(-x)^2", env) == Rat(4));
}

TEST_CASE("grammar rejections carry positions") {
  CHECK_THROWS_AS(parse_expr("x^(y)"), ParseError);
  try {
    parse_expr("x^(y)");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 3);
  }
  CHECK_THROWS_AS(parse_expr("2 +"), ParseError);
  CHECK_THROWS_AS(parse_expr("(1 + 2"), ParseError);
  CHECK_THROWS_AS(parse_expr("#"), ParseError);
  CHECK_THROWS_AS(parse_expr("x^-2"), ParseError);
}

TEST_CASE("printing re-parses to an equal tree") {
  for (const char* src : {"x^2 + 3*x*y", "1/2*x", "-x^2", "(-x)^2", "a - (b - c)",
                          "(x + y)*(x - y)", "2*x/(y + 1)", "x^2^3", "-(x + y)"}) {
    Expr e = parse_expr(src);
    CHECK(parse_expr(print_expr(e)) == e);
  }
}

TEST_CASE("variable collection order") {
  auto v1 = collect_vars(parse_expr("x2 + x10*x1"));
  CHECK(v1 == std::vector<std::string>{"x1", "x2", "x10"});
  auto v2 = collect_vars(parse_expr("z + a*y"));
  CHECK(v2 == std::vector<std::string>{"a", "y", "z"});
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval_rat_expr("x + 1", {}), std::invalid_argument);
  CHECK_THROWS_AS(eval_rat_expr("1/(2 - 2)", {}), std::domain_error);
}

TEST_CASE("conversion to formal quotients") {
  Expr e = parse_expr("(x + 1)/(x - 1)");
  RatFunc rf = expr_to_ratfunc(e, {"x"});
  Poly x = Poly::var(0);
  CHECK(rf.num == x + Poly(1));
  CHECK(rf.den == x - Poly(1));
  CHECK_THROWS_AS(expr_to_polyfunc(e, {"x"}), std::domain_error);
  PolyFunc p = expr_to_polyfunc(parse_expr("x^2/4"), {"x"});
  CHECK(p.component(0) == x * x * Rat(1, 4));
}
