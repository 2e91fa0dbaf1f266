#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetcalc/poly.hpp"
#include "jetcalc/rational.hpp"

namespace jetcalc {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), column(col_) {}
};

// Expression tree over rational literals, variables, + - * / ^ and unary
// minus. '^' takes a nonnegative integer literal exponent only.
struct Expr {
  enum class Kind { num, var, neg, add, sub, mul, div, pow };
  Kind kind = Kind::num;
  Integer value = 0;     // num
  std::string name;      // var
  unsigned exponent = 0; // pow
  std::vector<Expr> kids;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name &&
           a.exponent == b.exponent && a.kids == b.kids;
  }
};

Expr parse_expr(const std::string& src);
std::string print_expr(const Expr& e);  // re-parses to an equal tree

// All variable names, each once. If every name is x<number> the order is by
// index, otherwise lexicographic.
std::vector<std::string> collect_vars(const Expr& e);

// Generic evaluation over a commutative ring; Inv supplies ring inversion
// for division nodes.
template <typename R, typename Inv>
R eval_expr(const Expr& e, const std::map<std::string, R>& env, const R& one, Inv inv) {
  switch (e.kind) {
    case Expr::Kind::num:
      return one * Rat(e.value);
    case Expr::Kind::var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw std::invalid_argument("unbound variable: " + e.name);
      return it->second;
    }
    case Expr::Kind::neg: {
      R v = eval_expr(e.kids[0], env, one, inv);
      return one * Rat(0) - v;
    }
    case Expr::Kind::add:
      return eval_expr(e.kids[0], env, one, inv) + eval_expr(e.kids[1], env, one, inv);
    case Expr::Kind::sub:
      return eval_expr(e.kids[0], env, one, inv) - eval_expr(e.kids[1], env, one, inv);
    case Expr::Kind::mul:
      return eval_expr(e.kids[0], env, one, inv) * eval_expr(e.kids[1], env, one, inv);
    case Expr::Kind::div:
      return eval_expr(e.kids[0], env, one, inv) * inv(eval_expr(e.kids[1], env, one, inv));
    case Expr::Kind::pow: {
      R b = eval_expr(e.kids[0], env, one, inv);
      R r = one;
      for (unsigned i = 0; i < e.exponent; ++i) r = r * b;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

// Formal quotient of polynomials; denominators are never reduced, only kept
// nonzero. Used for exact self-checks on expressions with division.
struct RatFunc {
  Poly num;
  Poly den;  // nonzero
};

// vars[i] = name of the variable substituted by Poly::var(i).
RatFunc expr_to_ratfunc(const Expr& e, const std::vector<std::string>& vars);

// Requires the expression to be division-free after constant folding of
// literal quotients; throws otherwise.
PolyFunc expr_to_polyfunc(const Expr& e, const std::vector<std::string>& vars);

}  // namespace jetcalc
