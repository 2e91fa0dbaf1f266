#pragma once

#include <concepts>
#include <vector>

#include "jetcalc/matrix.hpp"
#include "jetcalc/mutation.hpp"
#include "jetcalc/rational.hpp"

namespace jetcalc {

// A polynomial group presented concretely: a module with a group product
// whose iterated products have bounded degree. Everything the exponential
// machinery needs can be evaluated pointwise, so the engine below works for
// coordinate vectors, multilinear families, axes vectors and sections alike.
template <typename G>
concept GroupChunk = requires(const G& g, const typename G::Elem& a, const Rat& r) {
  { g.mul(a, a) } -> std::same_as<typename G::Elem>;
  { g.zero() } -> std::same_as<typename G::Elem>;
  { g.add(a, a) } -> std::same_as<typename G::Elem>;
  { g.scale(r, a) } -> std::same_as<typename G::Elem>;
  { g.equal(a, a) } -> std::same_as<bool>;
  { g.degree() } -> std::same_as<int>;
};

template <GroupChunk G>
typename G::Elem group_pow_nat(const G& g, const typename G::Elem& x, unsigned n) {
  typename G::Elem acc = g.zero();
  for (unsigned i = 0; i < n; ++i) acc = g.mul(acc, x);
  return acc;
}

// psi_j(x): the part of the j-fold product x...x in which every factor
// carries positive degree, isolated by inclusion-exclusion over which
// factors are replaced by the unit.
template <GroupChunk G>
typename G::Elem group_psi(const G& g, unsigned j, const typename G::Elem& x) {
  if (j == 0) return g.zero();
  typename G::Elem total = g.zero();
  bool first = true;
  for (unsigned bits = 0; bits < (1u << j); ++bits) {
    typename G::Elem prod = g.zero();
    for (unsigned i = 0; i < j; ++i) prod = g.mul(prod, (bits >> i) & 1 ? x : g.zero());
    int sign = (j - __builtin_popcount(bits)) % 2 ? -1 : 1;
    typename G::Elem term = g.scale(Rat(sign), prod);
    total = first ? term : g.add(total, term);
    first = false;
  }
  return total;
}

// Homogeneous component of degree m of psi_p, by exact interpolation in a
// scalar parameter over the nodes 0..degree.
template <GroupChunk G>
typename G::Elem group_psi_homog(const G& g, unsigned p, unsigned m, const typename G::Elem& x) {
  const unsigned deg = static_cast<unsigned>(g.degree());
  Matrix<Rat> w = inverse_vandermonde(deg);
  typename G::Elem acc = g.zero();
  for (unsigned t = 0; t <= deg; ++t) {
    if (w.at(m, t).is_zero()) continue;
    typename G::Elem val = group_psi(g, p, g.scale(Rat(static_cast<long>(t)), x));
    acc = g.add(acc, g.scale(w.at(m, t), val));
  }
  return acc;
}

// x^n for any integer n, through the binomial expansion in the psi maps.
template <GroupChunk G>
typename G::Elem group_power(const G& g, const typename G::Elem& x, long n) {
  typename G::Elem acc = g.zero();
  for (unsigned j = 1; j <= static_cast<unsigned>(g.degree()); ++j) {
    Rat c = binomial_z(n, j);
    if (c.is_zero()) continue;
    acc = g.add(acc, g.scale(c, group_psi(g, j, x)));
  }
  return acc;
}

template <GroupChunk G>
typename G::Elem group_exp(const G& g, const typename G::Elem& x) {
  typename G::Elem acc = g.zero();
  const bool wrong_weight = active_mutation() == Mutation::ch_coeff;
  for (unsigned p = 1; p <= static_cast<unsigned>(g.degree()); ++p) {
    Rat w = wrong_weight ? Rat(1, static_cast<long>(p)) : Rat(Integer(1), factorial(p));
    acc = g.add(acc, g.scale(w, group_psi_homog(g, p, p, x)));
  }
  return acc;
}

template <GroupChunk G>
typename G::Elem group_log(const G& g, const typename G::Elem& x) {
  typename G::Elem acc = g.zero();
  for (unsigned p = 1; p <= static_cast<unsigned>(g.degree()); ++p) {
    Rat w = Rat((p % 2) ? 1 : -1, static_cast<long>(p));
    acc = g.add(acc, g.scale(w, group_psi(g, p, x)));
  }
  return acc;
}

// Campbell-Hausdorff product carried by the group: log(exp x . exp y).
template <GroupChunk G>
typename G::Elem group_ch(const G& g, const typename G::Elem& x, const typename G::Elem& y) {
  return group_log(g, g.mul(group_exp(g, x), group_exp(g, y)));
}

}  // namespace jetcalc
