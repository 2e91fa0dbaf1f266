#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "jetcalc/multiindex.hpp"
#include "jetcalc/poly.hpp"
#include "jetcalc/rational.hpp"
#include "jetcalc/scalars.hpp"

namespace jetcalc {

// Point of the k-th iterated tangent space of Q^n in a chart: one vector per
// multi-index mask, component 0 being the base point.
struct TkPoint {
  int k = 1;
  unsigned n = 0;
  std::vector<std::vector<Rat>> comps;  // size 2^k, each of length n

  TkPoint() = default;
  TkPoint(int k_, unsigned n_) : k(k_), n(n_), comps(std::size_t(1) << k_, std::vector<Rat>(n_)) {
    check_order(k_);
  }

  const std::vector<Rat>& base() const { return comps[0]; }

  friend bool operator==(const TkPoint& a, const TkPoint& b) {
    return a.k == b.k && a.n == b.n && a.comps == b.comps;
  }
};

inline TkPoint sigma_act(const Perm& s, const TkPoint& u) {
  if (static_cast<int>(s.size()) != u.k) throw std::invalid_argument("permutation size != order");
  TkPoint r(u.k, u.n);
  for (Mask g = 0; g < Mask(u.comps.size()); ++g) r.comps[apply_perm(s, g)] = u.comps[g];
  return r;
}

// x + delta v1 + ... with every weight-j component equal to jets[j-1].
inline TkPoint jet_point(int k, std::span<const Rat> x, const std::vector<std::vector<Rat>>& jets) {
  TkPoint u(k, static_cast<unsigned>(x.size()));
  u.comps[0].assign(x.begin(), x.end());
  for (Mask g = 1; g < Mask(u.comps.size()); ++g) {
    int w = weight(g);
    if (w <= static_cast<int>(jets.size())) u.comps[g] = jets[w - 1];
  }
  return u;
}

// Directional derivative of every component as a polynomial map in x.
inline PolyFunc dir_derivative(const PolyFunc& f, std::span<const Rat> v) {
  if (v.size() != f.domain_dim()) throw std::invalid_argument("direction dimension mismatch");
  std::vector<Poly> comps;
  comps.reserve(f.codomain_dim());
  for (unsigned c = 0; c < f.codomain_dim(); ++c) {
    Poly acc;
    for (unsigned j = 0; j < f.domain_dim(); ++j)
      acc += f.component(c).derivative(j) * v[j];
    comps.push_back(std::move(acc));
  }
  return PolyFunc(f.domain_dim(), std::move(comps));
}

// d^l f(x)(v_1,...,v_l) by iterated formal differentiation, then evaluation.
inline std::vector<Rat> higher_diff(const PolyFunc& f, std::span<const Rat> x,
                                    const std::vector<std::vector<Rat>>& dirs) {
  PolyFunc g = f;
  for (const auto& v : dirs) g = dir_derivative(g, v);
  return g.eval_rat(x);
}

// The slope f^[1](x,v,t): the exact quotient (f(x+tv)-f(x))/t, evaluated at
// the given t. At t = 0 this is df(x)v.
inline std::vector<Rat> slope(const PolyFunc& f, std::span<const Rat> x, std::span<const Rat> v,
                              const Rat& t) {
  if (x.size() != f.domain_dim() || v.size() != f.domain_dim())
    throw std::invalid_argument("slope: dimension mismatch");
  // substitute x_i -> x_i + T v_i with T the single symbolic variable 0
  std::vector<Poly> line;
  line.reserve(f.domain_dim());
  for (unsigned i = 0; i < f.domain_dim(); ++i)
    line.push_back(Poly(x[i]) + Poly::var(0) * v[i]);
  std::vector<Rat> fx = f.eval_rat(x);
  std::vector<Rat> out;
  out.reserve(f.codomain_dim());
  const Rat tv[] = {t};
  for (unsigned c = 0; c < f.codomain_dim(); ++c) {
    Poly q = f.component(c).subst(line) - Poly(fx[c]);
    out.push_back(q.is_zero() ? Rat(0) : q.divide_by_var(0).eval_rat(tv));
  }
  return out;
}

// Coordinatewise evaluation of f over the iterated dual-number ring: the
// generic-ring route of forward differentiation.
inline TkPoint tk_extend(const PolyFunc& f, const TkPoint& u) {
  if (u.n != f.domain_dim()) throw std::invalid_argument("tk_extend: dimension mismatch");
  const int k = u.k;
  std::vector<TkScalar<Rat>> coords;
  coords.reserve(u.n);
  for (unsigned i = 0; i < u.n; ++i) {
    TkScalar<Rat> xi(k);
    for (Mask g = 0; g < Mask(u.comps.size()); ++g) xi[g] = u.comps[g][i];
    coords.push_back(std::move(xi));
  }
  auto vals = f.eval<TkScalar<Rat>>(coords, TkScalar<Rat>::one(k));
  TkPoint w(k, f.codomain_dim());
  for (unsigned c = 0; c < vals.size(); ++c)
    for (Mask g = 0; g < Mask(w.comps.size()); ++g) w.comps[g][c] = vals[c][g];
  return w;
}

// Same map through the partition sum over higher differentials; agrees with
// tk_extend on the nose and serves as its independent oracle.
inline TkPoint tk_map_formula(const PolyFunc& f, const TkPoint& u) {
  if (u.n != f.domain_dim()) throw std::invalid_argument("tk_map_formula: dimension mismatch");
  const int k = u.k;
  TkPoint w(k, f.codomain_dim());
  w.comps[0] = f.eval_rat(u.base());
  for (Mask g = 1; g < Mask(u.comps.size()); ++g) {
    std::vector<Rat> acc(f.codomain_dim());
    for (const Partition& lam : enumerate_partitions(g)) {
      std::vector<std::vector<Rat>> dirs;
      dirs.reserve(lam.length());
      for (Mask part : lam.parts) dirs.push_back(u.comps[part]);
      std::vector<Rat> d = higher_diff(f, u.base(), dirs);
      for (unsigned c = 0; c < acc.size(); ++c) acc[c] += d[c];
    }
    w.comps[g] = std::move(acc);
  }
  return w;
}

namespace detail {
// nondecreasing tuples of positive integers of length len summing to j
inline void compositions_rec(unsigned j, unsigned len, unsigned min,
                             std::vector<unsigned>& acc,
                             std::vector<std::vector<unsigned>>& out) {
  if (len == 1) {
    if (j >= min) {
      acc.push_back(j);
      out.push_back(acc);
      acc.pop_back();
    }
    return;
  }
  for (unsigned first = min; first * len <= j; ++first) {
    acc.push_back(first);
    compositions_rec(j - first, len - 1, first, acc, out);
    acc.pop_back();
  }
}
}  // namespace detail

inline std::vector<std::vector<unsigned>> nondecreasing_compositions(unsigned j, unsigned len) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> acc;
  if (len >= 1) detail::compositions_rec(j, len, 1, acc, out);
  return out;
}

// Jet-coordinate map: w_j = sum over nondecreasing size profiles of the
// decomposition count times the corresponding higher differential.
inline std::vector<std::vector<Rat>> jk_map_formula(const PolyFunc& f, std::span<const Rat> x,
                                                    const std::vector<std::vector<Rat>>& jets) {
  const unsigned k = static_cast<unsigned>(jets.size());
  std::vector<std::vector<Rat>> w(k);
  for (unsigned j = 1; j <= k; ++j) {
    std::vector<Rat> acc(f.codomain_dim());
    for (unsigned l = 1; l <= j; ++l) {
      for (const auto& profile : nondecreasing_compositions(j, l)) {
        std::vector<std::vector<Rat>> dirs;
        dirs.reserve(l);
        for (unsigned s : profile) dirs.push_back(jets[s - 1]);
        Rat count(decomposition_count(j, profile));
        std::vector<Rat> d = higher_diff(f, x, dirs);
        for (unsigned c = 0; c < acc.size(); ++c) acc[c] += d[c] * count;
      }
    }
    w[j - 1] = std::move(acc);
  }
  return w;
}

// d^j (g o f)(x)(v,...,v) by the partition-count composition rule.
inline std::vector<Rat> faa_di_bruno(const PolyFunc& g, const PolyFunc& f, std::span<const Rat> x,
                                     unsigned j, std::span<const Rat> v) {
  if (g.domain_dim() != f.codomain_dim())
    throw std::invalid_argument("faa_di_bruno: dimension mismatch");
  std::vector<Rat> fx = f.eval_rat(x);
  // inner differentials d^i f(x)(v,..,v), i = 1..j
  std::vector<std::vector<Rat>> dfi(j + 1);
  {
    PolyFunc gcur = f;
    for (unsigned i = 1; i <= j; ++i) {
      gcur = dir_derivative(gcur, v);
      dfi[i] = gcur.eval_rat(x);
    }
  }
  std::vector<Rat> acc(g.codomain_dim());
  for (unsigned l = 1; l <= j; ++l) {
    for (const auto& profile : nondecreasing_compositions(j, l)) {
      std::vector<std::vector<Rat>> dirs;
      dirs.reserve(l);
      for (unsigned s : profile) dirs.push_back(dfi[s]);
      Rat count(decomposition_count(j, profile));
      std::vector<Rat> d = higher_diff(g, fx, dirs);
      for (unsigned c = 0; c < acc.size(); ++c) acc[c] += d[c] * count;
    }
  }
  return acc;
}

}  // namespace jetcalc
