#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetcalc/poly_calculus.hpp"
#include "jetcalc/rng.hpp"

using namespace jetcalc;

namespace {
PolyFunc square_1d() {
  // f(x) = x^2 on one variable
  std::vector<Poly> c{Poly::var(0) * Poly::var(0)};
  return PolyFunc(1, std::move(c));
}
}  // namespace

TEST_CASE("polynomial arithmetic and canonical equality") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly p = (x + y) * (x - y);
  Poly q = x * x - y * y;
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK(p.total_degree() == 2);
  Poly d = p.derivative(0);
  CHECK(d == x * Rat(2));
  // evaluation over the rationals
  std::vector<Rat> pt{Rat(3), Rat(2)};
  CHECK(p.eval_rat(pt) == Rat(5));
  // substitution is evaluation over the polynomial ring
  std::vector<Poly> sub{y, x};
  CHECK(p.subst(sub) == y * y - x * x);
  CHECK(Poly(Rat(0)).is_zero());
}

TEST_CASE("slope of the square map") {
  PolyFunc f = square_1d();
  // f^[1](x,v,t) = 2xv + t v^2
  std::vector<Rat> x{Rat(5)}, v{Rat(3)};
  CHECK(slope(f, x, v, Rat(0))[0] == Rat(30));
  CHECK(slope(f, x, v, Rat(2))[0] == Rat(30 + 2 * 9));
  // linear maps have constant slope f(v)
  std::vector<Poly> lc{Poly::var(0) * Rat(4)};
  PolyFunc lin(1, std::move(lc));
  for (long t : {-2L, 0L, 5L}) CHECK(slope(lin, x, v, Rat(t))[0] == Rat(12));
}

TEST_CASE("higher differentials") {
  PolyFunc f = square_1d();
  std::vector<Rat> x{Rat(7)};
  CHECK(higher_diff(f, x, {{Rat(2)}, {Rat(5)}})[0] == Rat(2 * 2 * 5));
  // vanishing beyond the degree
  CHECK(higher_diff(f, x, {{Rat(1)}, {Rat(1)}, {Rat(1)}})[0] == Rat(0));
}

TEST_CASE("forward evaluation over the dual numbers") {
  PolyFunc f = square_1d();
  TkPoint u(2, 1);
  u.comps[0] = {Rat(1)};
  u.comps[1] = {Rat(1)};
  u.comps[2] = {Rat(1)};
  TkPoint w = tk_extend(f, u);
  CHECK(w.comps[0][0] == Rat(1));
  CHECK(w.comps[1][0] == Rat(2));
  CHECK(w.comps[2][0] == Rat(2));
  CHECK(w.comps[3][0] == Rat(2));
  CHECK(tk_extend(PolyFunc::identity(1), u) == u);
  // the top coefficient splits into first and second differentials
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    TkPoint r(2, 1);
    for (Mask g = 0; g < 4; ++g) r.comps[g] = rng.rat_vec(1);
    TkPoint o = tk_extend(f, r);
    Rat df12 = higher_diff(f, r.comps[0], {r.comps[3]})[0];
    Rat d2f = higher_diff(f, r.comps[0], {r.comps[1], r.comps[2]})[0];
    CHECK(o.comps[3][0] == df12 + d2f);
  }
}

TEST_CASE("third-order top component of the partition formula") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    PolyFunc f(2, {Poly::var(0) * Poly::var(0) * Poly::var(1), Poly::var(1) * Poly::var(1)});
    TkPoint u(3, 2);
    for (Mask g = 0; g < 8; ++g) u.comps[g] = rng.rat_vec(2);
    TkPoint w = tk_map_formula(f, u);
    auto d = [&](std::vector<std::vector<Rat>> dirs) { return higher_diff(f, u.comps[0], dirs); };
    std::vector<Rat> expect = d({u.comps[7]});
    for (auto& t : {d({u.comps[1], u.comps[6]}), d({u.comps[2], u.comps[5]}),
                    d({u.comps[4], u.comps[3]}), d({u.comps[1], u.comps[2], u.comps[4]})})
      for (unsigned i = 0; i < 2; ++i) expect[i] += t[i];
    CHECK(w.comps[7] == expect);
    CHECK(tk_extend(f, u) == w);
  }
  // linear maps act componentwise
  PolyFunc lin(2, {Poly::var(0) + Poly::var(1), Poly::var(1) * Rat(3)});
  TkPoint u(3, 2);
  for (Mask g = 0; g < 8; ++g) u.comps[g] = {Rat(int(g)), Rat(1)};
  TkPoint w = tk_map_formula(lin, u);
  for (Mask g = 0; g < 8; ++g) CHECK(w.comps[g] == lin.eval_rat(u.comps[g]));
}

TEST_CASE("jet coordinates of the square map") {
  PolyFunc f = square_1d();
  std::vector<Rat> x{Rat(2)};
  std::vector<std::vector<Rat>> jets{{Rat(3)}, {Rat(5)}};
  auto w = jk_map_formula(f, x, jets);
  // second order: df(x)w + d^2 f(x)(v,v)
  CHECK(w[0][0] == Rat(2 * 2 * 3));
  CHECK(w[1][0] == Rat(2 * 2 * 5 + 2 * 3 * 3));
  // third order carries the mixed coefficient three
  std::vector<std::vector<Rat>> jets3{{Rat(1)}, {Rat(1)}, {Rat(0)}};
  auto w3 = jk_map_formula(f, x, jets3);
  // d f(x) v3 + 3 d^2 f(x)(v1, v2) + d^3 f(x)(v1,v1,v1) with f of degree two
  CHECK(w3[2][0] == Rat(0) + Rat(3) * Rat(2) + Rat(0));
  // pure first-order jet: the diagonal of the higher differentials
  std::vector<std::vector<Rat>> diag{{Rat(3)}, {Rat(0)}, {Rat(0)}, {Rat(0)}};
  auto wd = jk_map_formula(f, x, diag);
  CHECK(wd[0][0] == higher_diff(f, x, {{Rat(3)}})[0]);
  CHECK(wd[1][0] == higher_diff(f, x, {{Rat(3)}, {Rat(3)}})[0]);
  CHECK(wd[2][0] == Rat(0));
  CHECK(wd[3][0] == Rat(0));
}

TEST_CASE("composition rule for higher differentials") {
  Rng rng(23);
  PolyFunc f(1, {Poly::var(0) * Poly::var(0) + Poly::var(0) * Rat(2)});
  PolyFunc g(1, {Poly::var(0) * Poly::var(0) * Poly::var(0)});
  std::vector<Rat> x{Rat(1, 2)}, v{Rat(2)};
  // order two: dg(f(x)) d^2f(v,v) + d^2 g(f(x))(df v, df v)
  std::vector<Rat> fx = f.eval_rat(x);
  Rat dfv = higher_diff(f, x, {v})[0];
  Rat d2f = higher_diff(f, x, {v, v})[0];
  Rat dg = higher_diff(g, fx, {{Rat(1)}})[0];
  Rat d2g = higher_diff(g, fx, {{Rat(1)}, {Rat(1)}})[0];
  Rat expect = dg * d2f + d2g * dfv * dfv;
  CHECK(faa_di_bruno(g, f, x, 2, v)[0] == expect);
  // identity inner map reduces to plain differentials
  for (unsigned j = 1; j <= 3; ++j)
    CHECK(faa_di_bruno(g, PolyFunc::identity(1), x, j, v) ==
          higher_diff(g, x, std::vector<std::vector<Rat>>(j, v)));
  // random cross-check against direct differentiation of the composite
  for (int rep = 0; rep < 10; ++rep) {
    unsigned j = 1 + unsigned(rng.below(4));
    std::vector<Rat> xx{rng.rat()}, vv{rng.rat()};
    CHECK(faa_di_bruno(g, f, xx, j, vv) ==
          higher_diff(compose(g, f), xx, std::vector<std::vector<Rat>>(j, vv)));
  }
  CHECK_THROWS_AS(faa_di_bruno(g, PolyFunc::identity(2), x, 2, v), std::invalid_argument);
}

TEST_CASE("degenerate zero-dimensional domains") {
  PolyFunc f(0, {Poly(Rat(5))});
  std::vector<Rat> empty;
  CHECK(f.eval_rat(empty) == std::vector<Rat>{Rat(5)});
  TkPoint u(2, 0);
  TkPoint w = tk_extend(f, u);
  CHECK(w.comps[0] == std::vector<Rat>{Rat(5)});
  CHECK(tk_map_formula(f, u) == w);
}
