#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetcalc/multilinear.hpp"
#include "jetcalc/rng.hpp"

using namespace jetcalc;

namespace {

// second-order element with a single bilinear component
GmElement<Rat> bilinear_element(const CubeOfModules& cube, const std::vector<Rat>& tensor) {
  GmElement<Rat> f(cube);
  MLMap<Rat>& b = f.entry(Partition({1, 2}));
  REQUIRE(b.tensor.size() == tensor.size());
  b.tensor = tensor;
  return f;
}

}  // namespace

TEST_CASE("second-order shape: one bilinear correction on the top axis") {
  CubeOfModules cube = CubeOfModules::tangent_type(2, 1);
  GmElement<Rat> f = bilinear_element(cube, {Rat(5)});
  TotalVector<Rat> v(cube);
  v.comps[1] = {Rat(2)};
  v.comps[2] = {Rat(3)};
  v.comps[3] = {Rat(7)};
  TotalVector<Rat> w = gm_apply(f, v);
  CHECK(w.comps[1] == std::vector<Rat>{Rat(2)});
  CHECK(w.comps[2] == std::vector<Rat>{Rat(3)});
  CHECK(w.comps[3] == std::vector<Rat>{Rat(7 + 5 * 2 * 3)});
  // identity element
  CHECK(gm_apply(GmElement<Rat>::identity(cube), v) == v);
  // composition adds the bilinear parts; inversion negates them
  GmElement<Rat> g = bilinear_element(cube, {Rat(-2)});
  CHECK(gm_compose(f, g) == bilinear_element(cube, {Rat(3)}));
  CHECK(gm_invert(f) == bilinear_element(cube, {Rat(-5)}));
}

TEST_CASE("third-order composition and inversion corrections") {
  // one-dimensional axes keep every component a single number
  CubeOfModules cube = CubeOfModules::tangent_type(3, 1);
  Rng rng(3);
  auto randelt = [&]() {
    GmElement<Rat> f(cube);
    for (Mask alpha = 3; alpha < 8; ++alpha) {
      if (weight(alpha) < 2) continue;
      for (const Partition& lam : enumerate_partitions(alpha)) {
        if (lam.length() < 2) continue;
        f.entry(lam).tensor[0] = rng.rat(3, 1);
      }
    }
    f.prune();
    return f;
  };
  for (int rep = 0; rep < 20; ++rep) {
    GmElement<Rat> a = randelt(), b = randelt();
    GmElement<Rat> comp = gm_compose(b, a);
    auto coef = [&](const GmElement<Rat>& e, std::initializer_list<Mask> parts) {
      const MLMap<Rat>* m = e.find(Partition(std::vector<Mask>(parts)));
      return m ? m->tensor[0] : Rat(0);
    };
    // bilinear components add
    for (auto parts : {std::vector<Mask>{1, 2}, std::vector<Mask>{1, 4}, std::vector<Mask>{2, 4},
                       std::vector<Mask>{1, 6}, std::vector<Mask>{2, 5}, std::vector<Mask>{3, 4}})
      CHECK(coef(comp, {parts[0], parts[1]}) == coef(a, {parts[0], parts[1]}) +
                                                    coef(b, {parts[0], parts[1]}));
    // the trilinear component picks up the three mixed contractions
    Rat expect = coef(a, {1, 2, 4}) + coef(b, {1, 2, 4}) + coef(b, {1, 6}) * coef(a, {2, 4}) +
                 coef(b, {2, 5}) * coef(a, {1, 4}) + coef(b, {3, 4}) * coef(a, {1, 2});
    CHECK(coef(comp, {1, 2, 4}) == expect);
    // inversion: length-two parts negate, the trilinear part corrects
    GmElement<Rat> inv = gm_invert(a);
    CHECK(coef(inv, {1, 2}) == -coef(a, {1, 2}));
    Rat inv_top = -coef(a, {1, 2, 4}) + coef(a, {1, 6}) * coef(a, {2, 4}) +
                  coef(a, {2, 5}) * coef(a, {1, 4}) + coef(a, {3, 4}) * coef(a, {1, 2});
    CHECK(coef(inv, {1, 2, 4}) == inv_top);
    CHECK(gm_compose(a, inv).is_identity());
  }
}

TEST_CASE("third-order apply expansion with all seven components") {
  CubeOfModules cube = CubeOfModules::tangent_type(3, 1);
  Rng rng(13);
  GmElement<Rat> f(cube);
  std::map<std::vector<Mask>, Rat> coef;
  for (std::vector<Mask> parts : {std::vector<Mask>{1, 2}, std::vector<Mask>{1, 4},
                                  std::vector<Mask>{2, 4}, std::vector<Mask>{1, 6},
                                  std::vector<Mask>{2, 5}, std::vector<Mask>{3, 4},
                                  std::vector<Mask>{1, 2, 4}}) {
    Rat c = rng.rat(3, 1);
    coef[parts] = c;
    f.entry(Partition(parts)).tensor[0] = c;
  }
  TotalVector<Rat> v(cube);
  for (Mask g = 1; g < 8; ++g) v.comps[g] = {rng.rat(3, 1)};
  TotalVector<Rat> w = gm_apply(f, v);
  auto vc = [&](Mask g) { return v.comps[g][0]; };
  // weight-one components pass through
  for (Mask g : {Mask(1), Mask(2), Mask(4)}) CHECK(w.comps[g][0] == vc(g));
  // weight-two components pick up one bilinear correction each
  CHECK(w.comps[3][0] == vc(3) + coef[{1, 2}] * vc(1) * vc(2));
  CHECK(w.comps[5][0] == vc(5) + coef[{1, 4}] * vc(1) * vc(4));
  CHECK(w.comps[6][0] == vc(6) + coef[{2, 4}] * vc(2) * vc(4));
  // the top component collects three bilinear terms and the trilinear one
  CHECK(w.comps[7][0] == vc(7) + coef[{1, 6}] * vc(1) * vc(6) + coef[{2, 5}] * vc(2) * vc(5) +
                             coef[{3, 4}] * vc(3) * vc(4) +
                             coef[{1, 2, 4}] * vc(1) * vc(2) * vc(4));
}

TEST_CASE("flip conjugation fixes a symmetric second-order element") {
  CubeOfModules cube = CubeOfModules::tangent_type(2, 2);
  GmElement<Rat> f(cube);
  MLMap<Rat>& b = f.entry(Partition({1, 2}));
  // a symmetric bilinear map on the model space
  Rng rng(15);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = i; j < 2; ++j)
      for (unsigned c = 0; c < 2; ++c) {
        unsigned ij[2] = {i, j}, ji[2] = {j, i};
        Rat val = rng.rat(3, 1);
        b.at(ij, c) = val;
        b.at(ji, c) = val;
      }
  CHECK(permute_conjugate(transposition(2, 0, 1), f) == f);
  CHECK(is_very_symmetric(f));
  // breaking the symmetry is detected
  unsigned idx01[2] = {0, 1};
  f.entry(Partition({1, 2})).at(idx01, 0) += Rat(1);
  CHECK(!is_very_symmetric(f));
}

TEST_CASE("shift operators square to a projection") {
  CubeOfModules cube = CubeOfModules::tangent_type(3, 2);
  Rng rng(5);
  TotalVector<Rat> v(cube);
  for (Mask g = 1; g < 8; ++g) v.comps[g] = rng.rat_vec(2);
  TotalVector<Rat> ss = shift_apply(1, 2, shift_apply(1, 2, v));
  // components without axis one pass through, those with it die
  for (Mask g = 1; g < 8; ++g) {
    if (g & 1)
      CHECK(ss.comps[g] == std::vector<Rat>(2, Rat(0)));
    else
      CHECK(ss.comps[g] == v.comps[g]);
  }
  CHECK_THROWS_AS(shift_apply(1, 1, v), std::invalid_argument);
  // every second-order element commutes with both shifts
  CubeOfModules c2 = CubeOfModules::tangent_type(2, 2);
  GmElement<Rat> f(c2);
  MLMap<Rat>& b = f.entry(Partition({1, 2}));
  for (Rat& x : b.tensor) x = rng.rat(3, 1);
  CHECK(commutes_with_shift(f, 1, 2));
  CHECK(commutes_with_shift(f, 2, 1));
}

TEST_CASE("very symmetric elements from polynomial endomaps") {
  // F(x) = x + q(x) with one quadratic term per component
  Poly x0 = Poly::var(0), x1 = Poly::var(1);
  PolyFunc F(2, {x0 + x0 * x1, x1 + x0 * x0 * Rat(1, 2)});
  GmElement<Rat> f = from_polymap(F, 3);
  CHECK(is_very_symmetric(f));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) CHECK(commutes_with_shift(f, i, j));
  CHECK(to_polymap(f) == F);
  CHECK(is_symmetrizable(f));
  CHECK(symmetrize(f) == f);
  // every length-two component equals the polarized second differential
  for (const Partition& lam :
       {Partition({1, 2}), Partition({1, 4}), Partition({2, 4}), Partition({1, 6})}) {
    const MLMap<Rat>* b = f.find(lam);
    REQUIRE(b != nullptr);
    // d^2 F(0)(e0, e1) = (1, 0); diagonal entries (e0,e0) -> (0, 1), (e1,e1) -> 0
    unsigned idx01[2] = {0, 1};
    unsigned idx00[2] = {0, 0};
    unsigned idx11[2] = {1, 1};
    CHECK(b->at(idx01, 0) == Rat(1));
    CHECK(b->at(idx01, 1) == Rat(0));
    CHECK(b->at(idx00, 1) == Rat(1));
    CHECK(b->at(idx00, 0) == Rat(0));
    CHECK(b->at(idx11, 0) == Rat(0));
    CHECK(b->at(idx11, 1) == Rat(0));
  }
  CHECK(from_polymap(PolyFunc::identity(2), 2).is_identity());
  CHECK_THROWS_AS(from_polymap(PolyFunc(1, {Poly::var(0) + Poly(1)}), 2), std::invalid_argument);
  CHECK_THROWS_AS(from_polymap(PolyFunc(1, {Poly::var(0) * Rat(2)}), 2), std::invalid_argument);
}

TEST_CASE("curvature operators and symmetrization at third order") {
  CubeOfModules cube = CubeOfModules::tangent_type(3, 1);
  Rng rng(7);
  // start from a shift-invariant element and scramble the top entry
  PolyFunc F(1, {Poly::var(0) + Poly::var(0) * Poly::var(0) * Rat(1, 3)});
  GmElement<Rat> f = from_polymap(F, 3);
  f.entry(Partition({1, 2, 4})).tensor[0] += Rat(4);
  CHECK(is_symmetrizable(f));
  GmElement<Rat> sym = symmetrize(f);
  CHECK(is_very_symmetric(sym));
  // the identity permutation has trivial curvature
  CHECK(curvature_operator(perm_identity(3), f).is_identity());
  // a non-symmetrizable family: one lone bilinear entry
  GmElement<Rat> lone(cube);
  lone.entry(Partition({1, 2})).tensor[0] = Rat(1);
  CHECK(!is_symmetrizable(lone));
  CHECK_THROWS_AS(symmetrize(lone), std::domain_error);
  CHECK(!is_very_symmetric(lone));
}

TEST_CASE("errors and guards") {
  CubeOfModules cube(2, {0, 1, 2, 1}, false);  // not tangent type
  GmElement<Rat> f(cube);
  TotalVector<Rat> v(cube);
  CHECK_THROWS_AS(permute_conjugate(transposition(2, 0, 1), f), std::domain_error);
  CHECK_THROWS_AS(shift_apply(1, 2, v), std::domain_error);
  CubeOfModules other = CubeOfModules::tangent_type(2, 1);
  GmElement<Rat> g(other);
  CHECK_THROWS_AS(gm_compose(f, g), std::invalid_argument);
}
