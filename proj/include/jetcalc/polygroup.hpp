#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetcalc/groupchunk.hpp"
#include "jetcalc/matrix.hpp"
#include "jetcalc/multilinear.hpp"
#include "jetcalc/poly.hpp"

namespace jetcalc {

// Polynomial group on Q^N: a polynomial product map in 2N variables (first
// block x, second block y) whose iterated products stay within the degree
// bound. The unit is the origin.
class PolyGroup {
 public:
  using Elem = std::vector<Rat>;

  PolyGroup(unsigned dim, PolyFunc product, int degree_bound, bool validate = true)
      : n_(dim), m_(std::move(product)), k_(degree_bound) {
    if (m_.domain_dim() != 2 * n_ || m_.codomain_dim() != n_)
      throw std::invalid_argument("product must map 2N variables to N components");
    if (k_ < 1) throw std::invalid_argument("degree bound must be positive");
    if (validate) validate_group();
  }

  unsigned dim() const { return n_; }
  const PolyFunc& product() const { return m_; }
  int degree() const { return k_; }

  Elem mul(const Elem& a, const Elem& b) const {
    if (a.size() != n_ || b.size() != n_) throw std::invalid_argument("element dimension");
    std::vector<Rat> point(a);
    point.insert(point.end(), b.begin(), b.end());
    return m_.eval_rat(point);
  }
  Elem zero() const { return Elem(n_, Rat(0)); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (unsigned i = 0; i < n_; ++i) r[i] += b[i];
    return r;
  }
  Elem scale(const Rat& s, const Elem& a) const {
    Elem r = a;
    for (Rat& x : r) x *= s;
    return r;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

 private:
  // unit laws symbolically, degree bound for iterated products up to k+1
  void validate_group() const {
    std::vector<Poly> x_zero, zero_x;
    for (unsigned i = 0; i < n_; ++i) x_zero.push_back(Poly::var(i));
    for (unsigned i = 0; i < n_; ++i) x_zero.push_back(Poly(0));
    for (unsigned i = 0; i < n_; ++i) zero_x.push_back(Poly(0));
    for (unsigned i = 0; i < n_; ++i) zero_x.push_back(Poly::var(i));
    for (unsigned c = 0; c < n_; ++c) {
      if (!(m_.component(c).subst(x_zero) == Poly::var(c)) ||
          !(m_.component(c).subst(zero_x) == Poly::var(c)))
        throw std::invalid_argument("product does not have the origin as unit");
    }
    PolyFunc iter = m_;  // product of j blocks, on j*N variables
    for (int j = 2; j <= k_ + 1; ++j) {
      if (iter.total_degree() > unsigned(k_))
        throw std::invalid_argument("not a polynomial group of degree k");
      if (j == k_ + 1) break;
      // iter_{j+1}(x_1..x_{j+1}) = m(iter_j(x_1..x_j), x_{j+1})
      std::vector<Poly> args;
      args.reserve(2 * n_);
      for (unsigned c = 0; c < n_; ++c) args.push_back(iter.component(c));
      for (unsigned c = 0; c < n_; ++c)
        args.push_back(Poly::var(unsigned(j) * n_ + c));
      std::vector<Poly> comps;
      comps.reserve(n_);
      for (unsigned c = 0; c < n_; ++c) comps.push_back(m_.component(c).subst(args));
      iter = PolyFunc(unsigned(j + 1) * n_, std::move(comps));
    }
  }

  unsigned n_;
  PolyFunc m_;
  int k_;
};

static_assert(GroupChunk<PolyGroup>);

// Bidegree decomposition of the product by exact interpolation on the
// integer grid {0..k}^2.
inline std::map<std::pair<unsigned, unsigned>, PolyFunc> homogeneous_parts(const PolyGroup& g) {
  const unsigned n = g.dim();
  const unsigned k = static_cast<unsigned>(g.degree());
  Matrix<Rat> w = inverse_vandermonde(k);
  // product evaluated at (s x, t y), symbolically
  std::map<std::pair<unsigned, unsigned>, PolyFunc> parts;
  std::vector<PolyFunc> grid((k + 1) * (k + 1), PolyFunc::zero(2 * n, n));
  for (unsigned s = 0; s <= k; ++s)
    for (unsigned t = 0; t <= k; ++t) {
      std::vector<Poly> args;
      args.reserve(2 * n);
      for (unsigned i = 0; i < n; ++i) args.push_back(Poly::var(i) * Rat(static_cast<long>(s)));
      for (unsigned i = 0; i < n; ++i)
        args.push_back(Poly::var(n + i) * Rat(static_cast<long>(t)));
      std::vector<Poly> comps;
      comps.reserve(n);
      for (unsigned c = 0; c < n; ++c) comps.push_back(g.product().component(c).subst(args));
      grid[s * (k + 1) + t] = PolyFunc(2 * n, std::move(comps));
    }
  for (unsigned p = 0; p <= k; ++p)
    for (unsigned q = 0; q + p <= k; ++q) {
      PolyFunc acc = PolyFunc::zero(2 * n, n);
      for (unsigned s = 0; s <= k; ++s) {
        if (w.at(p, s).is_zero()) continue;
        for (unsigned t = 0; t <= k; ++t) {
          if (w.at(q, t).is_zero()) continue;
          acc = acc + grid[s * (k + 1) + t] * (w.at(p, s) * w.at(q, t));
        }
      }
      bool zero = true;
      for (unsigned c = 0; c < n; ++c)
        if (!acc.component(c).is_zero()) zero = false;
      if (!zero) parts[{p, q}] = std::move(acc);
    }
  return parts;
}

// m_{1,1}(x,y) at concrete points, by the same interpolation.
inline std::vector<Rat> bilinear_part(const PolyGroup& g, std::span<const Rat> x,
                                      std::span<const Rat> y) {
  const unsigned k = static_cast<unsigned>(g.degree());
  Matrix<Rat> w = inverse_vandermonde(k);
  std::vector<Rat> acc(g.dim(), Rat(0));
  for (unsigned s = 0; s <= k; ++s) {
    if (w.at(1, s).is_zero()) continue;
    for (unsigned t = 0; t <= k; ++t) {
      if (w.at(1, t).is_zero()) continue;
      std::vector<Rat> xs(x.begin(), x.end()), yt(y.begin(), y.end());
      for (Rat& v : xs) v *= Rat(static_cast<long>(s));
      for (Rat& v : yt) v *= Rat(static_cast<long>(t));
      std::vector<Rat> val = g.mul(xs, yt);
      Rat wt = w.at(1, s) * w.at(1, t);
      for (unsigned c = 0; c < g.dim(); ++c) acc[c] += val[c] * wt;
    }
  }
  return acc;
}

inline std::vector<Rat> lie_bracket(const PolyGroup& g, std::span<const Rat> x,
                                    std::span<const Rat> y) {
  std::vector<Rat> a = bilinear_part(g, x, y);
  std::vector<Rat> b = bilinear_part(g, y, x);
  for (unsigned c = 0; c < g.dim(); ++c) a[c] -= b[c];
  return a;
}

inline PolyGroup::Elem psi(const PolyGroup& g, unsigned j, const PolyGroup::Elem& x) {
  return group_psi(g, j, x);
}
inline PolyGroup::Elem power(const PolyGroup& g, const PolyGroup::Elem& x, long n) {
  return group_power(g, x, n);
}
inline PolyGroup::Elem pg_exp(const PolyGroup& g, const PolyGroup::Elem& x) {
  return group_exp(g, x);
}
inline PolyGroup::Elem pg_log(const PolyGroup& g, const PolyGroup::Elem& x) {
  return group_log(g, x);
}
inline PolyGroup::Elem ch_product(const PolyGroup& g, const PolyGroup::Elem& x,
                                  const PolyGroup::Elem& y) {
  return group_ch(g, x, y);
}

// --- standard instances -----------------------------------------------------

// Heisenberg product x + y + B(x,y) with B((a,b,c),(d,e,f)) = (0,0,a e).
inline PolyGroup heisenberg_group() {
  Poly x1 = Poly::var(0), x2 = Poly::var(1), x3 = Poly::var(2);
  Poly y1 = Poly::var(3), y2 = Poly::var(4), y3 = Poly::var(5);
  std::vector<Poly> comps{x1 + y1, x2 + y2, x3 + y3 + x1 * y2};
  return PolyGroup(3, PolyFunc(6, std::move(comps)), 2);
}

// Campbell-Hausdorff group of the Heisenberg bracket: exp is the identity.
inline PolyGroup heisenberg_ch_group() {
  Poly x1 = Poly::var(0), x2 = Poly::var(1), x3 = Poly::var(2);
  Poly y1 = Poly::var(3), y2 = Poly::var(4), y3 = Poly::var(5);
  // [x,y] = (0,0, x1 y2 - x2 y1)
  std::vector<Poly> comps{x1 + y1, x2 + y2,
                          x3 + y3 + (x1 * y2 - x2 * y1) * Rat(1, 2)};
  return PolyGroup(3, PolyFunc(6, std::move(comps)), 2);
}

// Unit group of the nilpotent part of the matrix algebra over the iterated
// dual numbers: coordinates w_{alpha,i,j}, product from (1+X)(1+Y).
inline PolyGroup matrix_unit_group(int k, unsigned n) {
  check_order(k);
  const Mask masks = Mask(1) << k;
  const unsigned per = n * n;
  const unsigned N = (masks - 1) * per;
  auto coord = [&](bool second, Mask g, unsigned i, unsigned j) {
    return Poly::var((second ? N : 0) + (g - 1) * per + i * n + j);
  };
  std::vector<Poly> comps(N);
  for (Mask g = 1; g < masks; ++g)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        Poly acc = coord(false, g, i, j) + coord(true, g, i, j);
        for (Mask a = 1; a < masks; ++a) {
          if (!subset(a, g) || a == g) continue;
          Mask b = g ^ a;  // disjoint complement inside g
          for (unsigned l = 0; l < n; ++l) acc += coord(false, a, i, l) * coord(true, b, l, j);
        }
        comps[(g - 1) * per + i * n + j] = std::move(acc);
      }
  return PolyGroup(N, PolyFunc(2 * N, std::move(comps)), k);
}

// Coordinate chart of the unipotent multilinear group: tensor entries of the
// family in canonical partition order.
struct GmCoords {
  CubeOfModules cube;
  std::vector<std::pair<Partition, std::size_t>> layout;  // partition, tensor size
  unsigned total = 0;

  explicit GmCoords(const CubeOfModules& c) : cube(c) {
    const Mask masks = Mask(c.dims.size());
    for (Mask alpha = 1; alpha < masks; ++alpha) {
      if (weight(alpha) < 2) continue;
      for (const Partition& lam : enumerate_partitions(alpha)) {
        if (lam.length() < 2) continue;
        std::size_t sz = c.dims[lam.target()];
        for (Mask p : lam.parts) sz *= c.dims[p];
        layout.push_back({lam, sz});
        total += static_cast<unsigned>(sz);
      }
    }
  }

  template <typename R>
  std::vector<R> pack(const GmElement<R>& f) const {
    std::vector<R> out;
    out.reserve(total);
    for (auto& [lam, sz] : layout) {
      if (const MLMap<R>* b = f.find(lam)) {
        out.insert(out.end(), b->tensor.begin(), b->tensor.end());
      } else {
        out.insert(out.end(), sz, R(0));
      }
    }
    return out;
  }

  template <typename R>
  GmElement<R> unpack(std::span<const R> coords) const {
    GmElement<R> f(cube);
    std::size_t pos = 0;
    for (auto& [lam, sz] : layout) {
      MLMap<R> b = MLMap<R>::zero(cube, lam);
      for (std::size_t i = 0; i < sz; ++i) b.tensor[i] = coords[pos + i];
      pos += sz;
      if (!b.is_zero()) f.family.emplace(lam, std::move(b));
    }
    return f;
  }
};

// The unipotent multilinear group as a polynomial group: compose two generic
// elements with indeterminate coefficients and read off the product map.
inline PolyGroup gm_polygroup(const CubeOfModules& cube, bool validate = true) {
  GmCoords coords(cube);
  const unsigned N = coords.total;
  std::vector<Poly> xs, ys;
  xs.reserve(N);
  ys.reserve(N);
  for (unsigned i = 0; i < N; ++i) xs.push_back(Poly::var(i));
  for (unsigned i = 0; i < N; ++i) ys.push_back(Poly::var(N + i));
  GmElement<Poly> gx = coords.unpack<Poly>(xs);
  GmElement<Poly> gy = coords.unpack<Poly>(ys);
  GmElement<Poly> prod = gm_compose(gx, gy);
  std::vector<Poly> comps = coords.pack<Poly>(prod);
  return PolyGroup(N, PolyFunc(2 * N, std::move(comps)), cube.k, validate);
}

}  // namespace jetcalc
