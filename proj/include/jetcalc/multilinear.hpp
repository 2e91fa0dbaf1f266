#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "jetcalc/multiindex.hpp"
#include "jetcalc/poly.hpp"
#include "jetcalc/rational.hpp"

namespace jetcalc {

// Row-major odometer over a multi-dimensional index; false once wrapped.
inline bool next_index(std::vector<unsigned>& idx, std::span<const unsigned> dims) {
  std::size_t r = idx.size();
  while (r > 0) {
    --r;
    if (++idx[r] < dims[r]) return true;
    idx[r] = 0;
  }
  return false;
}

// Cube of modules: one free module per nonzero multi-index mask.
struct CubeOfModules {
  int k = 1;
  std::vector<unsigned> dims;  // indexed by mask; dims[0] unused (= 0)
  bool tangent = false;        // all axes identified with one model space

  CubeOfModules() = default;
  CubeOfModules(int k_, std::vector<unsigned> dims_, bool tangent_ = false)
      : k(k_), dims(std::move(dims_)), tangent(tangent_) {
    check_order(k);
    if (dims.size() != std::size_t(1) << k) throw std::invalid_argument("dims size != 2^k");
    if (tangent)
      for (Mask g = 2; g < Mask(dims.size()); ++g)
        if (dims[g] != dims[1]) throw std::invalid_argument("tangent cube with unequal axes");
  }
  static CubeOfModules tangent_type(int k, unsigned n) {
    std::vector<unsigned> d(std::size_t(1) << k, n);
    d[0] = 0;
    return CubeOfModules(k, std::move(d), true);
  }
  unsigned model_dim() const {
    if (!tangent) throw std::domain_error("operation requires a tangent-type cube");
    return dims[1];
  }
  friend bool operator==(const CubeOfModules& a, const CubeOfModules& b) {
    return a.k == b.k && a.dims == b.dims && a.tangent == b.tangent;
  }
};

// Element of the total space: one component vector per nonzero mask.
template <typename R = Rat>
struct TotalVector {
  CubeOfModules cube;
  std::vector<std::vector<R>> comps;  // comps[mask], comps[0] empty

  TotalVector() = default;
  explicit TotalVector(const CubeOfModules& c) : cube(c), comps(c.dims.size()) {
    for (Mask g = 1; g < Mask(c.dims.size()); ++g) comps[g].assign(c.dims[g], R(0));
  }
  friend bool operator==(const TotalVector& a, const TotalVector& b) {
    return a.cube == b.cube && a.comps == b.comps;
  }
};

// Permutation action on a tangent-type total space: components move to the
// permuted mask (identifications are the identity of the model space).
template <typename R>
TotalVector<R> sigma_act(const Perm& s, const TotalVector<R>& v) {
  v.cube.model_dim();
  TotalVector<R> r(v.cube);
  for (Mask g = 1; g < Mask(v.comps.size()); ++g) r.comps[apply_perm(s, g)] = v.comps[g];
  return r;
}

// Dense multilinear map V_{slot1} x ... x V_{slotL} -> V_codomain.
template <typename R = Rat>
struct MLMap {
  std::vector<Mask> slots;
  Mask codomain = 0;
  std::vector<unsigned> slot_dims;
  unsigned out_dim = 0;
  std::vector<R> tensor;  // row-major over slot indices, innermost = output

  static MLMap zero(const CubeOfModules& cube, const Partition& lam) {
    MLMap m;
    m.slots = lam.parts;
    m.codomain = lam.target();
    m.out_dim = cube.dims[m.codomain];
    std::size_t total = m.out_dim;
    for (Mask p : lam.parts) {
      m.slot_dims.push_back(cube.dims[p]);
      total *= cube.dims[p];
    }
    m.tensor.assign(total, R(0));
    return m;
  }

  bool is_zero() const {
    for (const R& x : tensor)
      if (!(x == R(0))) return false;
    return true;
  }

  std::size_t flat_index(std::span<const unsigned> idx, unsigned c) const {
    std::size_t f = 0;
    for (std::size_t r = 0; r < slot_dims.size(); ++r) f = f * slot_dims[r] + idx[r];
    return f * out_dim + c;
  }

  R& at(std::span<const unsigned> idx, unsigned c) { return tensor[flat_index(idx, c)]; }
  const R& at(std::span<const unsigned> idx, unsigned c) const {
    return tensor[flat_index(idx, c)];
  }

  std::vector<R> apply(std::span<const std::vector<R>> args) const {
    if (args.size() != slots.size()) throw std::invalid_argument("argument count mismatch");
    std::vector<R> out(out_dim, R(0));
    if (tensor.empty()) return out;
    std::vector<unsigned> idx(slots.size(), 0);
    do {
      R w(1);
      for (std::size_t r = 0; r < idx.size(); ++r) w = w * args[r][idx[r]];
      for (unsigned c = 0; c < out_dim; ++c) out[c] += at(idx, c) * w;
    } while (next_index(idx, slot_dims));
    return out;
  }

  // Tensor with slot axes permuted: position p of the result reads position
  // src_of[p] of this map.
  MLMap reordered(std::span<const std::size_t> src_of, const std::vector<Mask>& new_slots,
                  Mask new_codomain) const {
    MLMap m;
    m.slots = new_slots;
    m.codomain = new_codomain;
    m.out_dim = out_dim;
    m.slot_dims.resize(slot_dims.size());
    for (std::size_t p = 0; p < src_of.size(); ++p) m.slot_dims[p] = slot_dims[src_of[p]];
    m.tensor.assign(tensor.size(), R(0));
    if (tensor.empty()) return m;
    std::vector<unsigned> cur(slot_dims.size(), 0);  // indices in source order
    std::vector<unsigned> dst(slot_dims.size(), 0);
    do {
      for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = cur[src_of[p]];
      for (unsigned c = 0; c < out_dim; ++c) m.at(dst, c) = at(cur, c);
    } while (next_index(cur, slot_dims));
    return m;
  }

  friend bool operator==(const MLMap& a, const MLMap& b) {
    return a.slots == b.slots && a.codomain == b.codomain && a.tensor == b.tensor;
  }
};

// Unipotent multilinear-group element: identity on each axis plus a family
// of multilinear corrections indexed by partitions of length >= 2. Absent
// entries are zero; canonical form prunes zero tensors.
template <typename R = Rat>
struct GmElement {
  CubeOfModules cube;
  std::map<Partition, MLMap<R>> family;

  GmElement() = default;
  explicit GmElement(const CubeOfModules& c) : cube(c) {}

  static GmElement identity(const CubeOfModules& c) { return GmElement(c); }

  void prune() {
    std::erase_if(family, [](const auto& kv) { return kv.second.is_zero(); });
  }

  MLMap<R>& entry(const Partition& lam) {
    if (lam.length() < 2) throw std::invalid_argument("family entries need length >= 2");
    auto it = family.find(lam);
    if (it == family.end()) it = family.emplace(lam, MLMap<R>::zero(cube, lam)).first;
    return it->second;
  }
  const MLMap<R>* find(const Partition& lam) const {
    auto it = family.find(lam);
    return it == family.end() ? nullptr : &it->second;
  }

  // smallest family-entry length (k+1 when the element is the identity)
  int singular_order() const {
    int m = cube.k + 1;
    for (auto& [lam, b] : family)
      if (!b.is_zero()) m = std::min<int>(m, static_cast<int>(lam.length()));
    return m;
  }

  bool is_identity() const {
    for (auto& [lam, b] : family)
      if (!b.is_zero()) return false;
    return true;
  }

  friend bool operator==(GmElement a, GmElement b) {
    a.prune();
    b.prune();
    return a.cube == b.cube && a.family == b.family;
  }
};

// Module structure on families (not the group structure).
template <typename R>
GmElement<R> family_add(const GmElement<R>& a, const GmElement<R>& b) {
  if (!(a.cube == b.cube)) throw std::invalid_argument("cube mismatch");
  GmElement<R> r = a;
  for (auto& [lam, m] : b.family) {
    MLMap<R>& dst = r.entry(lam);
    for (std::size_t i = 0; i < m.tensor.size(); ++i) dst.tensor[i] += m.tensor[i];
  }
  r.prune();
  return r;
}

template <typename R>
GmElement<R> family_scale(const GmElement<R>& a, const Rat& s) {
  GmElement<R> r = a;
  for (auto& [lam, m] : r.family)
    for (R& x : m.tensor) x = x * s;
  r.prune();
  return r;
}

template <typename R>
GmElement<R> family_negate(const GmElement<R>& a) {
  return family_scale(a, Rat(-1));
}

template <typename R>
TotalVector<R> gm_apply(const GmElement<R>& f, const TotalVector<R>& v) {
  if (!(f.cube == v.cube)) throw std::invalid_argument("cube mismatch");
  TotalVector<R> out = v;
  for (auto& [lam, b] : f.family) {
    std::vector<std::vector<R>> args;
    args.reserve(lam.length());
    for (Mask p : lam.parts) args.push_back(v.comps[p]);
    std::vector<R> add = b.apply(args);
    Mask tgt = lam.target();
    for (unsigned c = 0; c < add.size(); ++c) out.comps[tgt][c] += add[c];
  }
  return out;
}

namespace detail {

// Value of the matrix coefficient f^{lam'} on basis arguments: the identity
// for trivial partitions, the family entry otherwise.
template <typename R>
std::vector<R> coeff_on_args(const GmElement<R>& f, const Partition& sub,
                             const std::vector<std::vector<R>>& args) {
  if (sub.length() == 1) return std::vector<R>(args[0]);
  if (const MLMap<R>* b = f.find(sub)) return b->apply(args);
  return std::vector<R>(f.cube.dims[sub.target()], R(0));
}

}  // namespace detail

// Composition g o f through the matrix-multiplication rule: for each
// partition, the sum of g's entry, f's entry and every contraction of g
// along a strictly coarser partition.
template <typename R>
GmElement<R> gm_compose(const GmElement<R>& g, const GmElement<R>& f) {
  if (!(g.cube == f.cube)) throw std::invalid_argument("cube mismatch");
  GmElement<R> out(g.cube);
  const Mask n = Mask(g.cube.dims.size());
  for (Mask alpha = 1; alpha < n; ++alpha) {
    if (weight(alpha) < 2) continue;
    for (const Partition& lam : enumerate_partitions(alpha)) {
      const std::size_t ell = lam.length();
      if (ell < 2) continue;
      MLMap<R> acc = MLMap<R>::zero(g.cube, lam);
      bool any = false;
      if (const MLMap<R>* bg = g.find(lam)) {
        for (std::size_t i = 0; i < acc.tensor.size(); ++i) acc.tensor[i] += bg->tensor[i];
        any = true;
      }
      if (const MLMap<R>* bf = f.find(lam)) {
        for (std::size_t i = 0; i < acc.tensor.size(); ++i) acc.tensor[i] += bf->tensor[i];
        any = true;
      }
      // strictly coarser partitions of intermediate length
      for (const Partition& omega : enumerate_partitions(alpha)) {
        const std::size_t r = omega.length();
        if (r < 2 || r >= ell) continue;
        RefinementResult ref = refinement(omega, lam);
        if (!ref.comparable) continue;
        const MLMap<R>* go = g.find(omega);
        if (!go) continue;
        any = true;
        // iterate basis tuples of lam's slots
        std::vector<unsigned> idx(ell, 0);
        std::vector<unsigned> dims(ell);
        for (std::size_t p = 0; p < ell; ++p) dims[p] = g.cube.dims[lam.parts[p]];
        // position of each lam part for argument lookup
        std::map<Mask, std::size_t> pos;
        for (std::size_t p = 0; p < ell; ++p) pos[lam.parts[p]] = p;
        if (acc.tensor.empty()) continue;
        do {
          // arguments of g^omega: f's induced coefficients on basis vectors
          std::vector<std::vector<R>> gargs;
          gargs.reserve(r);
          for (std::size_t oi = 0; oi < r; ++oi) {
            const Partition& ind = ref.induced[oi];
            std::vector<std::vector<R>> fargs;
            fargs.reserve(ind.length());
            for (Mask part : ind.parts) {
              std::vector<R> e(g.cube.dims[part], R(0));
              e[idx[pos[part]]] = R(1);
              fargs.push_back(std::move(e));
            }
            gargs.push_back(detail::coeff_on_args(f, ind, fargs));
          }
          std::vector<R> val = go->apply(gargs);
          for (unsigned c = 0; c < val.size(); ++c) acc.at(idx, c) += val[c];
        } while (next_index(idx, dims));
      }
      if (any && !acc.is_zero()) out.family.emplace(lam, std::move(acc));
    }
  }
  return out;
}

// Unipotent inversion by descending induction: negating the family kills the
// lowest-length terms of the defect, which is then inverted recursively.
template <typename R>
GmElement<R> gm_invert(const GmElement<R>& f) {
  GmElement<R> cur = f;
  cur.prune();
  if (cur.is_identity()) return cur;
  GmElement<R> h = family_negate(cur);
  GmElement<R> defect = gm_compose(h, cur);
  defect.prune();
  if (defect.singular_order() <= cur.singular_order())
    throw std::logic_error("inversion defect did not gain singularity order");
  return gm_compose(gm_invert(defect), h);
}

// Conjugation by a permutation on a tangent-type cube: entry at lam reads
// the entry at the inverse-permuted partition with slots re-matched.
template <typename R>
GmElement<R> permute_conjugate(const Perm& s, const GmElement<R>& f) {
  f.cube.model_dim();  // tangent type required
  if (static_cast<int>(s.size()) != f.cube.k)
    throw std::invalid_argument("permutation size != cube order");
  GmElement<R> out(f.cube);
  for (auto& [src, b] : f.family) {
    Partition dst = apply_perm(s, src);
    // result slot p reads the source slot that s maps onto dst.parts[p]
    std::vector<std::size_t> src_of(dst.length());
    for (std::size_t p = 0; p < dst.length(); ++p) {
      for (std::size_t q = 0; q < src.length(); ++q)
        if (apply_perm(s, src.parts[q]) == dst.parts[p]) {
          src_of[p] = q;
          break;
        }
    }
    out.family.emplace(dst, b.reordered(src_of, dst.parts, dst.target()));
  }
  out.prune();
  return out;
}

template <typename R>
bool is_very_symmetric(const GmElement<R>& f) {
  const int k = f.cube.k;
  for (int i = 0; i + 1 < k; ++i) {
    if (!(permute_conjugate(transposition(k, i, i + 1), f) == f)) return false;
  }
  return true;
}

// Elementary shift: components with axis i absent pass through, components
// with i present but j absent move to mask+e_j, the rest die.
template <typename R>
TotalVector<R> shift_apply(int i, int j, const TotalVector<R>& v) {
  v.cube.model_dim();
  if (i == j) throw std::invalid_argument("shift requires i != j");
  const Mask bi = Mask(1) << (i - 1), bj = Mask(1) << (j - 1);
  TotalVector<R> out(v.cube);
  for (Mask g = 1; g < Mask(v.comps.size()); ++g) {
    if (!(g & bi))
      out.comps[g] = v.comps[g];
    else if (!(g & bj))
      out.comps[g | bj] = v.comps[g];
  }
  return out;
}

namespace detail {

// shifted partition: e_j joins the part containing i (defined when the
// target has i but not j)
inline Partition shift_partition(const Partition& lam, Mask bi, Mask bj) {
  std::vector<Mask> parts;
  parts.reserve(lam.parts.size());
  for (Mask p : lam.parts) parts.push_back((p & bi) ? (p | bj) : p);
  std::sort(parts.begin(), parts.end());
  return Partition(std::move(parts));
}

}  // namespace detail

// Diagram condition for commuting with the shift, cross-checked pointwise.
template <typename R>
bool commutes_with_shift(const GmElement<R>& f, int i, int j) {
  f.cube.model_dim();
  if (i == j) throw std::invalid_argument("shift requires i != j");
  const Mask bi = Mask(1) << (i - 1), bj = Mask(1) << (j - 1);
  const Mask n = Mask(f.cube.dims.size());
  bool diagram = true;
  for (Mask alpha = 1; alpha < n && diagram; ++alpha) {
    if (!(alpha & bi) || (alpha & bj) || weight(alpha) < 2) continue;
    for (const Partition& lam : enumerate_partitions(alpha)) {
      if (lam.length() < 2) continue;
      Partition shifted = detail::shift_partition(lam, bi, bj);
      // match slots: result slot p corresponds to shifted part of lam.parts[p]
      std::vector<Mask> moved;
      moved.reserve(lam.length());
      for (Mask p : lam.parts) moved.push_back((p & bi) ? (p | bj) : p);
      std::vector<std::size_t> src_of(lam.length());
      const MLMap<R>* bs = f.find(shifted);
      const MLMap<R>* bl = f.find(lam);
      if (bs == nullptr && bl == nullptr) continue;
      if (bs == nullptr || bl == nullptr) {
        if ((bs && !bs->is_zero()) || (bl && !bl->is_zero())) { diagram = false; break; }
        continue;
      }
      for (std::size_t p = 0; p < lam.length(); ++p) {
        auto it = std::find(shifted.parts.begin(), shifted.parts.end(), moved[p]);
        src_of[p] = static_cast<std::size_t>(it - shifted.parts.begin());
      }
      MLMap<R> matched = bs->reordered(src_of, lam.parts, lam.target());
      if (!(matched.tensor == bl->tensor)) { diagram = false; break; }
    }
  }
  if (diagram) {
    // cross-check: commutation must then hold pointwise; sample the axes
    // basis and a deterministic batch of composite vectors
    auto commutes_at = [&](const TotalVector<R>& v) {
      return gm_apply(f, shift_apply(i, j, v)) == shift_apply(i, j, gm_apply(f, v));
    };
    for (Mask g = 1; g < n; ++g) {
      for (unsigned u = 0; u < f.cube.dims[g]; ++u) {
        TotalVector<R> v(f.cube);
        v.comps[g][u] = R(1);
        if (!commutes_at(v))
          throw std::logic_error("shift diagram and pointwise commutation disagree");
      }
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int sample = 0; sample < 8; ++sample) {
      TotalVector<R> v(f.cube);
      for (Mask g = 1; g < n; ++g)
        for (unsigned u = 0; u < f.cube.dims[g]; ++u) {
          state = state * 6364136223846793005ull + 1442695040888963407ull;
          v.comps[g][u] = R(int(state >> 61) - 3);
        }
      if (!commutes_at(v))
        throw std::logic_error("shift diagram and pointwise commutation disagree");
    }
  }
  return diagram;
}

// Curvature operator of a permutation: the group defect between the
// conjugated element and the element itself.
template <typename R>
GmElement<R> curvature_operator(const Perm& s, const GmElement<R>& f) {
  return gm_compose(permute_conjugate(s, f), gm_invert(f));
}

template <typename R>
bool is_symmetrizable(const GmElement<R>& f) {
  const int k = f.cube.k;
  for (const Perm& s : all_permutations(k)) {
    GmElement<R> r = curvature_operator(s, f);
    r.prune();
    for (auto& [lam, b] : r.family)
      if (static_cast<int>(lam.length()) < k && !b.is_zero()) return false;
  }
  return true;
}

// Barycenter of the permutation orbit: only the top (length-k) component
// changes, replaced by its symmetrization.
template <typename R>
GmElement<R> symmetrize(const GmElement<R>& f) {
  if (!is_symmetrizable(f)) throw std::domain_error("element is not symmetrizable");
  const int k = f.cube.k;
  std::vector<Mask> singles;
  for (int i = 0; i < k; ++i) singles.push_back(Mask(1) << i);
  Partition top(singles);
  GmElement<R> out = f;
  out.family.erase(top);
  MLMap<R> acc = MLMap<R>::zero(f.cube, top);
  auto perms = all_permutations(k);
  for (const Perm& s : perms) {
    GmElement<R> g = permute_conjugate(s, f);
    if (const MLMap<R>* b = g.find(top))
      for (std::size_t t = 0; t < acc.tensor.size(); ++t) acc.tensor[t] += b->tensor[t];
  }
  Rat w = Rat(1, static_cast<long>(perms.size()));
  for (R& x : acc.tensor) x = x * w;
  if (!acc.is_zero()) out.family.emplace(top, std::move(acc));
  out.prune();
  return out;
}

// Element with b^lam = d^{len(lam)} F(0) for an endomap with F(0)=0 and
// dF(0)=id; lands in the very-symmetric shift-invariant subgroup.
GmElement<Rat> from_polymap(const PolyFunc& F, int k);

// Reconstruction F(x) = x + sum_l d^l(x,..,x)/l! from the standard-partition
// components (meaningful on the very-symmetric shift-invariant subgroup).
PolyFunc to_polymap(const GmElement<Rat>& f);

inline GmElement<Rat> from_polymap(const PolyFunc& F, int k) {
  check_order(k);
  const unsigned n = F.domain_dim();
  if (F.codomain_dim() != n) throw std::invalid_argument("endomap required");
  std::vector<Rat> zero(n, Rat(0));
  for (const Rat& c : F.eval_rat(zero))
    if (!c.is_zero()) throw std::invalid_argument("map must fix the origin");
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Rat d = F.component(i).derivative(j).eval_rat(zero);
      if (!(d == Rat(i == j ? 1 : 0)))
        throw std::invalid_argument("linear part must be the identity");
    }
  if (F.total_degree() > unsigned(k)) throw std::invalid_argument("degree exceeds the order");
  CubeOfModules cube = CubeOfModules::tangent_type(k, n);
  GmElement<Rat> out(cube);
  const Mask nm = Mask(cube.dims.size());
  for (Mask alpha = 1; alpha < nm; ++alpha) {
    if (weight(alpha) < 2) continue;
    for (const Partition& lam : enumerate_partitions(alpha)) {
      const unsigned ell = static_cast<unsigned>(lam.length());
      if (ell < 2) continue;
      MLMap<Rat> b = MLMap<Rat>::zero(cube, lam);
      if (b.tensor.empty()) continue;
      // d^ell F(0) on basis tuples, by formal differentiation
      std::vector<unsigned> idx(ell, 0);
      bool nonzero = false;
      do {
        for (unsigned c = 0; c < n; ++c) {
          Poly p = F.component(c);
          for (unsigned r = 0; r < ell; ++r) p = p.derivative(idx[r]);
          Rat val = p.eval_rat(zero);
          if (!val.is_zero()) nonzero = true;
          b.at(idx, c) = val;
        }
      } while (next_index(idx, b.slot_dims));
      if (nonzero) out.family.emplace(lam, std::move(b));
    }
  }
  return out;
}

inline PolyFunc to_polymap(const GmElement<Rat>& f) {
  const unsigned n = f.cube.model_dim();
  const int k = f.cube.k;
  std::vector<Poly> comps;
  for (unsigned c = 0; c < n; ++c) comps.push_back(Poly::var(c));
  for (int ell = 2; ell <= k; ++ell) {
    std::vector<Mask> singles;
    for (int i = 0; i < ell; ++i) singles.push_back(Mask(1) << i);
    const MLMap<Rat>* b = f.find(Partition(singles));
    if (!b || b->tensor.empty()) continue;
    Rat w = Rat(1, factorial(unsigned(ell)));
    std::vector<unsigned> idx(ell, 0);
    do {
      Poly mono(1);
      for (int r = 0; r < ell; ++r) mono *= Poly::var(idx[r]);
      for (unsigned c = 0; c < n; ++c) comps[c] += mono * (b->at(idx, c) * w);
    } while (next_index(idx, b->slot_dims));
  }
  return PolyFunc(n, std::move(comps));
}

}  // namespace jetcalc
