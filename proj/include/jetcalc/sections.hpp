#pragma once

#include <stdexcept>
#include <vector>

#include "jetcalc/connections.hpp"
#include "jetcalc/groupchunk.hpp"
#include "jetcalc/multiindex.hpp"
#include "jetcalc/poly.hpp"

namespace jetcalc {

// Chart section of the k-th iterated tangent bundle: one polynomial vector
// field per nonzero mask.
struct SectionK {
  int k = 1;
  unsigned n = 0;
  std::vector<VectorField> comps;  // indexed by mask; comps[0] unused

  SectionK() = default;
  SectionK(int k_, unsigned n_)
      : k(k_), n(n_), comps(std::size_t(1) << k_, PolyFunc::zero(n_, n_)) {
    check_order(k_);
  }

  static SectionK axis(int k, Mask alpha, const VectorField& x) {
    SectionK s(k, x.domain_dim());
    s.comps[alpha] = x;
    return s;
  }
  // every weight-1 component equal to the field
  static SectionK diagonal(int k, const VectorField& x) {
    SectionK s(k, x.domain_dim());
    for (Mask g = 1; g < Mask(s.comps.size()); ++g)
      if (weight(g) == 1) s.comps[g] = x;
    return s;
  }

  friend bool operator==(const SectionK& a, const SectionK& b) {
    return a.k == b.k && a.n == b.n && a.comps == b.comps;
  }
};

inline SectionK sigma_act(const Perm& s, const SectionK& x) {
  if (static_cast<int>(s.size()) != x.k) throw std::invalid_argument("permutation size != order");
  SectionK r(x.k, x.n);
  for (Mask g = 1; g < Mask(x.comps.size()); ++g) r.comps[apply_perm(s, g)] = x.comps[g];
  return r;
}

inline bool is_symmetric(const SectionK& x) {
  for (int i = 0; i + 1 < x.k; ++i)
    if (!(sigma_act(transposition(x.k, i, i + 1), x) == x)) return false;
  return true;
}

// d^m F(x)(u_1(x), ..., u_m(x)): the higher differential of F as a
// multilinear map, evaluated on polynomial arguments.
inline PolyFunc higher_diff_poly(const PolyFunc& f, const std::vector<const PolyFunc*>& args) {
  const unsigned n = f.domain_dim();
  const std::size_t m = args.size();
  std::vector<Poly> out(f.codomain_dim());
  if (m == 0) return f;
  if (n == 0) return PolyFunc(n, std::move(out));  // no variables to differentiate
  std::vector<unsigned> js(m, 0);
  std::vector<unsigned> dims(m, n);
  do {
    std::vector<Poly> partial;
    partial.reserve(f.codomain_dim());
    for (unsigned c = 0; c < f.codomain_dim(); ++c) {
      Poly p = f.component(c);
      for (unsigned r = 0; r < m; ++r) p = p.derivative(js[r]);
      partial.push_back(std::move(p));
    }
    Poly weightp(1);
    for (unsigned r = 0; r < m; ++r) weightp *= args[r]->component(js[r]);
    for (unsigned c = 0; c < f.codomain_dim(); ++c) out[c] += partial[c] * weightp;
  } while (next_index(js, dims));
  return PolyFunc(n, std::move(out));
}

// Group product of sections: componentwise sum plus, for every partition,
// the differential of one first-factor component evaluated on the remaining
// second-factor components.
inline SectionK section_mul(const SectionK& x, const SectionK& y) {
  if (x.k != y.k || x.n != y.n) throw std::invalid_argument("section mismatch");
  SectionK z(x.k, x.n);
  for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
    PolyFunc acc = x.comps[g] + y.comps[g];
    if (weight(g) >= 2) {
      for (const Partition& lam : enumerate_partitions(g)) {
        const std::size_t ell = lam.length();
        if (ell < 2) continue;
        for (std::size_t j = 0; j < ell; ++j) {
          std::vector<const PolyFunc*> args;
          args.reserve(ell - 1);
          for (std::size_t s = 0; s < ell; ++s)
            if (s != j) args.push_back(&y.comps[lam.parts[s]]);
          acc = acc + higher_diff_poly(x.comps[lam.parts[j]], args);
        }
      }
    }
    z.comps[g] = std::move(acc);
  }
  return z;
}

// Unipotent inversion: ascending weight order, every correction term only
// involves components of strictly smaller weight.
inline SectionK section_inv(const SectionK& x) {
  SectionK z(x.k, x.n);
  for (int wgt = 1; wgt <= x.k; ++wgt) {
    for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
      if (weight(g) != wgt) continue;
      PolyFunc corr = PolyFunc::zero(x.n, x.n);
      if (wgt >= 2) {
        for (const Partition& lam : enumerate_partitions(g)) {
          const std::size_t ell = lam.length();
          if (ell < 2) continue;
          for (std::size_t j = 0; j < ell; ++j) {
            std::vector<const PolyFunc*> args;
            args.reserve(ell - 1);
            for (std::size_t s = 0; s < ell; ++s)
              if (s != j) args.push_back(&z.comps[lam.parts[s]]);
            corr = corr + higher_diff_poly(x.comps[lam.parts[j]], args);
          }
        }
      }
      z.comps[g] = -x.comps[g] - corr;
    }
  }
  return z;
}

struct SectionGroup {
  int k;
  unsigned n;
  using Elem = SectionK;
  Elem mul(const Elem& a, const Elem& b) const { return section_mul(a, b); }
  Elem zero() const { return SectionK(k, n); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (Mask g = 1; g < Mask(r.comps.size()); ++g) r.comps[g] = r.comps[g] + b.comps[g];
    return r;
  }
  Elem scale(const Rat& s, const Elem& a) const {
    Elem r = a;
    for (Mask g = 1; g < Mask(r.comps.size()); ++g) r.comps[g] = r.comps[g] * s;
    return r;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  int degree() const { return k; }
};

// star product X * Y = dY . X and its iterated powers
inline VectorField star_product(const VectorField& x, const VectorField& y) {
  return jacobian_apply(y, x);
}

// Exponential of the diagonal first-order section, in closed form: the
// weight-j components are exactly the j-th star powers (the factorials of
// the flow's Taylor series cancel against the symmetric-basis convention).
inline SectionK vf_exp_jet(const VectorField& x, int k) {
  check_order(k);
  SectionK s(k, x.domain_dim());
  std::vector<VectorField> powers(k + 1, x);
  for (int j = 2; j <= k; ++j) powers[j] = star_product(x, powers[j - 1]);
  for (Mask g = 1; g < Mask(s.comps.size()); ++g) s.comps[g] = powers[weight(g)];
  return s;
}

}  // namespace jetcalc
