#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetcalc/rng.hpp"
#include "jetcalc/scalars.hpp"
#include "jetcalc/scalars_io.hpp"

using namespace jetcalc;

namespace {
TkScalar<Rat> unit_sum(int k) {
  TkScalar<Rat> d(k);
  for (int i = 1; i <= k; ++i) d += TkScalar<Rat>::unit(k, i);
  return d;
}
}  // namespace

TEST_CASE("dual-number basics") {
  // (1+e1)(1+e2) = 1 + e1 + e2 + e1e2
  TkScalar<Rat> a = TkScalar<Rat>::one(2) + TkScalar<Rat>::unit(2, 1);
  TkScalar<Rat> b = TkScalar<Rat>::one(2) + TkScalar<Rat>::unit(2, 2);
  TkScalar<Rat> p = a * b;
  CHECK(p == TkScalar<Rat>(2, {Rat(1), Rat(1), Rat(1), Rat(1)}));
  // (2+3e)^{-1} = 1/2 - 3/4 e, and the defining identity
  TkScalar<Rat> d(1, {Rat(2), Rat(3)});
  CHECK(tk_inv(d) == TkScalar<Rat>(1, {Rat(1, 2), Rat(-3, 4)}));
  CHECK(d * tk_inv(d) == TkScalar<Rat>::one(1));
  CHECK(tk_inv(TkScalar<Rat>::one(3)) == TkScalar<Rat>::one(3));
  CHECK_THROWS_WITH_AS(tk_inv(TkScalar<Rat>::unit(2, 1)),
                       "not invertible: zero spacial part", std::domain_error);
}

TEST_CASE("squares and cubes of the symmetric unit sum") {
  // (e1+e2)^2 = 2 e1e2
  TkScalar<Rat> d2 = unit_sum(2);
  TkScalar<Rat> sq = d2 * d2;
  CHECK(sq == TkScalar<Rat>(2, {Rat(0), Rat(0), Rat(0), Rat(2)}));
  // (e1+e2+e3)^3 = 6 e1e2e3
  TkScalar<Rat> d3 = unit_sum(3);
  TkScalar<Rat> cube = d3 * d3 * d3;
  TkScalar<Rat> expect(3);
  expect[7] = Rat(6);
  CHECK(cube == expect);
}

TEST_CASE("jet basis multiplication") {
  CHECK(JetScalar<Rat>::basis(4, 1) * JetScalar<Rat>::basis(4, 1) ==
        JetScalar<Rat>::basis(4, 2).scaled(Rat(2)));
  CHECK(JetScalar<Rat>::basis(4, 2) * JetScalar<Rat>::basis(4, 2) ==
        JetScalar<Rat>::basis(4, 4).scaled(Rat(6)));
  // truncation kills products beyond the order
  JetScalar<Rat> zero(3);
  CHECK(JetScalar<Rat>::basis(3, 3) * JetScalar<Rat>::basis(3, 1) == zero);
}

TEST_CASE("jet inversion of 1 + delta in third order") {
  JetScalar<Rat> a = JetScalar<Rat>::one(3) + JetScalar<Rat>::basis(3, 1);
  // geometric series 1 - d + d^2 - d^3 in the symmetric basis
  CHECK(jk_inv(a) == JetScalar<Rat>(3, {Rat(1), Rat(-1), Rat(2), Rat(-6)}));
  CHECK(a * jk_inv(a) == JetScalar<Rat>::one(3));
  CHECK_THROWS_AS(jk_inv(JetScalar<Rat>::basis(2, 1)), std::domain_error);
}

TEST_CASE("permutation action") {
  Rng rng(5);
  TkScalar<Rat> a(2);
  for (Mask g = 0; g < 4; ++g) a[g] = rng.rat();
  CHECK(sigma_act(perm_identity(2), a) == a);
  // the flip exchanges the two unit coefficients and fixes the top
  TkScalar<Rat> f = sigma_act(transposition(2, 0, 1), a);
  CHECK(f[0] == a[0]);
  CHECK(f[1] == a[2]);
  CHECK(f[2] == a[1]);
  CHECK(f[3] == a[3]);
  // automorphism property on random inputs
  for (int rep = 0; rep < 20; ++rep) {
    int k = 2 + int(rng.below(3));
    TkScalar<Rat> x(k), y(k);
    for (Mask g = 0; g < Mask(x.size()); ++g) {
      x[g] = rng.rat();
      y[g] = rng.rat();
    }
    auto perms = all_permutations(k);
    const Perm& s = perms[rng.below(perms.size())];
    CHECK(sigma_act(s, x * y) == sigma_act(s, x) * sigma_act(s, y));
  }
}

TEST_CASE("embedding the jet ring as the symmetric subring") {
  // the degree-two basis element becomes the sum of all weight-two products
  TkScalar<Rat> e = jet_embed(JetScalar<Rat>::basis(3, 2));
  for (Mask g = 0; g < 8; ++g) CHECK(e[g] == Rat(weight(g) == 2 ? 1 : 0));
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    int k = 1 + int(rng.below(4));
    JetScalar<Rat> a(k), b(k);
    for (int j = 0; j <= k; ++j) {
      a[j] = rng.rat();
      b[j] = rng.rat();
    }
    CHECK(jet_embed(a * b) == jet_embed(a) * jet_embed(b));
    CHECK(jet_project(jet_embed(a)) == a);
  }
  CHECK_THROWS_WITH_AS(jet_project(TkScalar<Rat>::unit(2, 1)), "not Sigma_k-invariant",
                       std::domain_error);
}

TEST_CASE("order bounds and mismatches") {
  CHECK_THROWS_AS(TkScalar<Rat>(17), std::domain_error);
  CHECK_THROWS_AS(TkScalar<Rat>(0), std::domain_error);
  CHECK_THROWS_AS(JetScalar<Rat>(17), std::domain_error);
  TkScalar<Rat> a(2), b(3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  JetScalar<Rat> ja(2), jb(3);
  CHECK_THROWS_AS(ja + jb, std::invalid_argument);
}

TEST_CASE("textual rendering round-trips") {
  Rng rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    int k = 1 + int(rng.below(4));
    TkScalar<Rat> a(k);
    for (Mask g = 0; g < Mask(a.size()); ++g) a[g] = rng.rat();
    CHECK(parse_tk(print_tk(a), k) == a);
    JetScalar<Rat> j(k);
    for (int i = 0; i <= k; ++i) j[i] = rng.rat();
    CHECK(parse_jet(print_jet(j), k) == j);
  }
  CHECK(print_tk(TkScalar<Rat>(2)) == "0");
  TkScalar<Rat> one_plus = parse_tk("1 + e1 + 1/2*e1e2", 2);
  CHECK(one_plus[0] == Rat(1));
  CHECK(one_plus[1] == Rat(1));
  CHECK(one_plus[2] == Rat(0));
  CHECK(one_plus[3] == Rat(1, 2));
  // general expressions evaluate in the ring, including division
  TkScalar<Rat> inv = parse_tk("1/(2 + 3*e1)", 1);
  CHECK(inv == TkScalar<Rat>(1, {Rat(1, 2), Rat(-3, 4)}));
}
