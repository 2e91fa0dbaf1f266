#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "jetcalc/multilinear.hpp"
#include "jetcalc/mutation.hpp"
#include "jetcalc/poly.hpp"
#include "jetcalc/poly_calculus.hpp"

namespace jetcalc {

// Chart vector field on Q^n: a polynomial endomap.
using VectorField = PolyFunc;

// dX(x) . Y(x), differentiating the first nx variables only (components may
// carry extra variables acting as formal constants).
inline std::vector<Poly> jacobian_apply(std::span<const Poly> x_comps, unsigned nx,
                                        std::span<const Poly> dir) {
  std::vector<Poly> out;
  out.reserve(x_comps.size());
  for (const Poly& p : x_comps) {
    Poly acc;
    for (unsigned j = 0; j < nx; ++j) acc += p.derivative(j) * dir[j];
    out.push_back(std::move(acc));
  }
  return out;
}

inline VectorField jacobian_apply(const VectorField& x, const VectorField& y) {
  if (x.domain_dim() != y.domain_dim()) throw std::invalid_argument("field dimension mismatch");
  return VectorField(x.domain_dim(),
                     jacobian_apply(x.components(), x.domain_dim(), y.components()));
}

// Lie bracket of chart vector fields: dX.Y - dY.X.
inline VectorField vf_bracket(const VectorField& x, const VectorField& y) {
  return jacobian_apply(x, y) - jacobian_apply(y, x);
}

// Bilinear tensor field with polynomial coefficients: value(u,v)_c =
// sum coeffs[(c*n + a)*n + b](x) u_a v_b. Used both for Christoffel tensors
// (slots: value, direction) and for connection differences (slots:
// direction, value).
struct BilinearField {
  unsigned n = 0;
  PolyFunc coeffs;  // Q^n -> Q^{n^3}

  BilinearField() = default;
  BilinearField(unsigned n_, PolyFunc c) : n(n_), coeffs(std::move(c)) {
    if (coeffs.domain_dim() != n || coeffs.codomain_dim() != n * n * n)
      throw std::invalid_argument("coefficient tensor must map Q^n to Q^{n^3}");
  }
  static BilinearField zero(unsigned n) {
    return BilinearField(n, PolyFunc::zero(n, n * n * n));
  }

  const Poly& coeff(unsigned c, unsigned a, unsigned b) const {
    return coeffs.component((c * n + a) * n + b);
  }

  // symbolic application to polynomial arguments
  std::vector<Poly> apply(std::span<const Poly> u, std::span<const Poly> v) const {
    std::vector<Poly> out(n);
    for (unsigned c = 0; c < n; ++c) {
      Poly acc;
      for (unsigned a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        for (unsigned b = 0; b < n; ++b) {
          if (v[b].is_zero()) continue;
          acc += coeff(c, a, b) * u[a] * v[b];
        }
      }
      out[c] = std::move(acc);
    }
    return out;
  }

  std::vector<Rat> apply_at(std::span<const Rat> x, std::span<const Rat> u,
                            std::span<const Rat> v) const {
    std::vector<Rat> out(n, Rat(0));
    for (unsigned c = 0; c < n; ++c)
      for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
          out[c] += coeff(c, a, b).eval_rat(x) * u[a] * v[b];
    return out;
  }

  // directional derivative of the coefficients: (d_dir B)(u,v)
  std::vector<Poly> apply_derived(std::span<const Poly> dir, std::span<const Poly> u,
                                  std::span<const Poly> v) const {
    std::vector<Poly> out(n);
    for (unsigned c = 0; c < n; ++c) {
      Poly acc;
      for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
          Poly dB;
          for (unsigned j = 0; j < n; ++j) dB += coeff(c, a, b).derivative(j) * dir[j];
          acc += dB * u[a] * v[b];
        }
      out[c] = std::move(acc);
    }
    return out;
  }

  friend bool operator==(const BilinearField& a, const BilinearField& b) {
    return a.n == b.n && a.coeffs == b.coeffs;
  }
};

using Christoffel = BilinearField;

inline bool is_torsionfree(const Christoffel& b) {
  for (unsigned c = 0; c < b.n; ++c)
    for (unsigned i = 0; i < b.n; ++i)
      for (unsigned j = i + 1; j < b.n; ++j)
        if (!(b.coeff(c, i, j) == b.coeff(c, j, i))) return false;
  return true;
}

// torsion(u,v) = b(u,v) - b(v,u)
inline BilinearField torsion(const Christoffel& b) {
  std::vector<Poly> comps(b.n * b.n * b.n);
  for (unsigned c = 0; c < b.n; ++c)
    for (unsigned i = 0; i < b.n; ++i)
      for (unsigned j = 0; j < b.n; ++j)
        comps[(c * b.n + i) * b.n + j] = b.coeff(c, i, j) - b.coeff(c, j, i);
  return BilinearField(b.n, PolyFunc(b.n, std::move(comps)));
}

// Covariant derivative in a chart: (nabla_X Y)(x) = dY(x)X(x) + b_x(Y(x),X(x)).
inline VectorField covariant_derivative(const Christoffel& b, const VectorField& x,
                                        const VectorField& y) {
  if (x.domain_dim() != b.n || y.domain_dim() != b.n)
    throw std::invalid_argument("field dimension mismatch");
  std::vector<Poly> val = jacobian_apply(y.components(), b.n, x.components());
  std::vector<Poly> corr = b.apply(y.components(), x.components());
  for (unsigned c = 0; c < b.n; ++c) val[c] += corr[c];
  return VectorField(b.n, std::move(val));
}

// Geodesic spray at a point: base x, both first-order slots v, top slot
// b_x(v,v); lands in the flip-fixed set.
inline TkPoint spray_eval(const Christoffel& b, std::span<const Rat> x, std::span<const Rat> v) {
  TkPoint s(2, b.n);
  s.comps[0].assign(x.begin(), x.end());
  s.comps[1].assign(v.begin(), v.end());
  s.comps[2].assign(v.begin(), v.end());
  s.comps[3] = b.apply_at(x, v, v);
  return s;
}

// Recover the symmetric Christoffel value from the spray's quadratic term by
// polarization.
inline std::vector<Rat> spray_polarize(const Christoffel& b, std::span<const Rat> x,
                                       std::span<const Rat> u, std::span<const Rat> v) {
  std::vector<Rat> upv(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) upv[i] = u[i] + v[i];
  std::vector<Rat> quu = spray_eval(b, x, u).comps[3];
  std::vector<Rat> qvv = spray_eval(b, x, v).comps[3];
  std::vector<Rat> quv = spray_eval(b, x, upv).comps[3];
  std::vector<Rat> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = (quv[i] - quu[i] - qvv[i]) * Rat(1, 2);
  return out;
}

// Splitting of the third-order fiber derived from connections b (fiber) and
// c (base); the top component carries the six correction summands.
// Fiber data masks: bit0 = the fiber direction, bits 1,2 = base directions.
inline TkPoint derived_splitting(const Christoffel& b, const Christoffel& c,
                                 const TkPoint& u) {
  if (u.k != 3 || u.n != b.n || b.n != c.n)
    throw std::invalid_argument("derived_splitting expects third-order data");
  const std::vector<Rat>& x = u.base();
  const auto& w0 = u.comps[1];
  const auto& v1 = u.comps[2];
  const auto& v2 = u.comps[4];
  const auto& w01 = u.comps[3];
  const auto& w02 = u.comps[5];
  const auto& v12 = u.comps[6];
  TkPoint out = u;
  auto add = [&](std::vector<Rat>& dst, const std::vector<Rat>& add_v) {
    for (unsigned i = 0; i < dst.size(); ++i) dst[i] += add_v[i];
  };
  add(out.comps[3], b.apply_at(x, w0, v1));
  add(out.comps[5], b.apply_at(x, w0, v2));
  add(out.comps[6], c.apply_at(x, v1, v2));
  add(out.comps[7], b.apply_at(x, w0, v12));
  add(out.comps[7], b.apply_at(x, w01, v2));
  add(out.comps[7], b.apply_at(x, w02, v1));
  add(out.comps[7], b.apply_at(x, w0, c.apply_at(x, v1, v2)));
  add(out.comps[7], b.apply_at(x, b.apply_at(x, w0, v2), v1));
  {
    // derivative of the fiber Christoffel in the second base direction
    std::vector<Rat> d(b.n, Rat(0));
    for (unsigned cc = 0; cc < b.n; ++cc)
      for (unsigned a = 0; a < b.n; ++a)
        for (unsigned bb = 0; bb < b.n; ++bb) {
          Poly p = b.coeff(cc, a, bb);
          Rat dd(0);
          for (unsigned j = 0; j < b.n; ++j) dd += p.derivative(j).eval_rat(x) * v2[j];
          d[cc] += dd * w0[a] * v1[bb];
        }
    add(out.comps[7], d);
  }
  return out;
}

// Builds the unipotent fiber automorphism whose apply reproduces the derived
// splitting on the third-order fiber over x.
GmElement<Rat> derived_splitting_element(const Christoffel& b, const Christoffel& c,
                                         std::span<const Rat> x);

// Curvature tensor of a torsionfree Christoffel in a chart, as a polynomial
// map in (x, v1, v2, w) laid out as four consecutive variable blocks.
inline PolyFunc curvature_tensor(const Christoffel& b) {
  const unsigned n = b.n;
  auto block = [&](unsigned base) {
    std::vector<Poly> v;
    for (unsigned i = 0; i < n; ++i) v.push_back(Poly::var(base + i));
    return v;
  };
  std::vector<Poly> v1 = block(n), v2 = block(2 * n), w = block(3 * n);
  std::vector<Poly> bwv2 = b.apply(w, v2);
  std::vector<Poly> bwv1 = b.apply(w, v1);
  std::vector<Poly> t1 = b.apply(bwv2, v1);
  std::vector<Poly> t2 = b.apply(bwv1, v2);
  std::vector<Poly> t3 = b.apply_derived(v2, w, v1);
  std::vector<Poly> t4 = b.apply_derived(v1, w, v2);
  const Rat flip = active_mutation() == Mutation::curvature_sign ? Rat(-1) : Rat(1);
  std::vector<Poly> comps(n);
  for (unsigned c = 0; c < n; ++c) comps[c] = t1[c] - t2[c] + t3[c] * flip - t4[c];
  return PolyFunc(4 * n, std::move(comps));
}

struct CurvatureValue {
  std::vector<Rat> value;
  bool torsionfree;  // the hypothesis of the chart formula; false = warning
};

inline CurvatureValue curvature(const Christoffel& b, std::span<const Rat> x,
                                std::span<const Rat> v1, std::span<const Rat> v2,
                                std::span<const Rat> w) {
  PolyFunc r = curvature_tensor(b);
  std::vector<Rat> point(x.begin(), x.end());
  point.insert(point.end(), v1.begin(), v1.end());
  point.insert(point.end(), v2.begin(), v2.end());
  point.insert(point.end(), w.begin(), w.end());
  return CurvatureValue{r.eval_rat(point), is_torsionfree(b)};
}

// Curvature through covariant derivatives with constant-extension fields:
// [nabla_u, nabla_v] w as a polynomial map on the same variable layout.
// Matches curvature_tensor for the Christoffel with reflected sign, which is
// the convention the chart splitting derivation carries.
inline PolyFunc commutator_curvature(const Christoffel& b) {
  const unsigned n = b.n;
  auto block = [&](unsigned base) {
    std::vector<Poly> v;
    for (unsigned i = 0; i < n; ++i) v.push_back(Poly::var(base + i));
    return v;
  };
  std::vector<Poly> u = block(n), v = block(2 * n), w = block(3 * n);
  auto nabla = [&](std::span<const Poly> dir, std::span<const Poly> field) {
    // field components may involve all blocks; differentiate the x block only
    std::vector<Poly> val = jacobian_apply(field, n, dir);
    std::vector<Poly> corr = b.apply(field, dir);
    for (unsigned c = 0; c < n; ++c) val[c] += corr[c];
    return val;
  };
  std::vector<Poly> nv_w = nabla(v, w);
  std::vector<Poly> nu_nv_w = nabla(u, nv_w);
  std::vector<Poly> nu_w = nabla(u, w);
  std::vector<Poly> nv_nu_w = nabla(v, nu_w);
  std::vector<Poly> comps(n);
  for (unsigned c = 0; c < n; ++c) comps[c] = nu_nv_w[c] - nv_nu_w[c];
  return PolyFunc(4 * n, std::move(comps));
}

inline Christoffel negated(const Christoffel& b) {
  return Christoffel(b.n, -b.coeffs);
}

// Structure-equation record: curvature of b and of the shifted connection,
// with the exact decomposition of the difference.
struct StructureEquation {
  PolyFunc r_of_b;         // curvature of b
  PolyFunc r_shifted;      // curvature of the connection moved by A
  PolyFunc nabla_term;     // (nabla A)((X,Y)-(Y,X)), same variable layout
  PolyFunc bracket_term;   // [A_X, A_Y]
  bool identity_holds;     // r_shifted - r_of_b == nabla_term + bracket_term
};

// A has slots (direction, value). Adding A to the covariant derivative moves
// the chart Christoffel by b'(w,v) = b(w,v) - A(v,w).
StructureEquation structure_equation(const Christoffel& b, const BilinearField& a);

inline StructureEquation structure_equation(const Christoffel& b, const BilinearField& a) {
  if (b.n != a.n) throw std::invalid_argument("dimension mismatch");
  if (!is_torsionfree(b)) throw std::invalid_argument("structure equations need torsionfree b");
  const unsigned n = b.n;
  // b'(w,v) = b(w,v) - A(v,w)
  std::vector<Poly> shifted(n * n * n);
  for (unsigned c = 0; c < n; ++c)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        shifted[(c * n + i) * n + j] = b.coeff(c, i, j) - a.coeff(c, j, i);
  Christoffel bp(n, PolyFunc(n, std::move(shifted)));

  auto block = [&](unsigned base) {
    std::vector<Poly> v;
    for (unsigned i = 0; i < n; ++i) v.push_back(Poly::var(base + i));
    return v;
  };
  std::vector<Poly> u = block(n), v = block(2 * n), w = block(3 * n);

  // (nabla A)(u,v)w = d_u A(v,w) - b(A(v,w),u) + A(v, b(w,u)) + A(b(v,u), w)
  auto nabla_a = [&](std::span<const Poly> uu, std::span<const Poly> vv) {
    std::vector<Poly> avw = a.apply(vv, w);
    std::vector<Poly> t1 = a.apply_derived(uu, vv, w);
    std::vector<Poly> t2 = b.apply(avw, uu);
    std::vector<Poly> t3 = a.apply(vv, b.apply(w, uu));
    std::vector<Poly> t4 = a.apply(b.apply(vv, uu), w);
    std::vector<Poly> out(n);
    for (unsigned c = 0; c < n; ++c) out[c] = t1[c] - t2[c] + t3[c] + t4[c];
    return out;
  };
  std::vector<Poly> na_uv = nabla_a(u, v);
  std::vector<Poly> na_vu = nabla_a(v, u);
  std::vector<Poly> nterm(n);
  for (unsigned c = 0; c < n; ++c) nterm[c] = na_uv[c] - na_vu[c];

  std::vector<Poly> lhs = a.apply(u, a.apply(v, w));
  std::vector<Poly> rhs = a.apply(v, a.apply(u, w));
  std::vector<Poly> bterm(n);
  for (unsigned c = 0; c < n; ++c) bterm[c] = lhs[c] - rhs[c];

  StructureEquation rec{curvature_tensor(b), curvature_tensor(bp),
                        PolyFunc(4 * n, std::move(nterm)), PolyFunc(4 * n, std::move(bterm)),
                        false};
  PolyFunc diff = rec.r_shifted - rec.r_of_b;
  PolyFunc expect = rec.nabla_term + rec.bracket_term;
  rec.identity_holds = diff == expect;
  return rec;
}

inline GmElement<Rat> derived_splitting_element(const Christoffel& b, const Christoffel& c,
                                                std::span<const Rat> x) {
  const unsigned n = b.n;
  CubeOfModules cube = CubeOfModules::tangent_type(3, n);
  GmElement<Rat> f(cube);
  auto basis = [&](unsigned i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = Rat(1);
    return e;
  };
  auto fill2 = [&](Mask p1, Mask p2, auto&& value) {
    Partition lam({p1, p2});
    MLMap<Rat> m = MLMap<Rat>::zero(cube, lam);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        std::vector<Rat> val = value(basis(i), basis(j));
        for (unsigned cc = 0; cc < n; ++cc) {
          unsigned idx[2] = {i, j};
          m.at(idx, cc) = val[cc];
        }
      }
    if (!m.is_zero()) f.family.emplace(lam, std::move(m));
  };
  // bit0 carries the fiber slot, bits 1 and 2 the base directions
  fill2(1, 2, [&](auto u, auto v) { return b.apply_at(x, u, v); });
  fill2(1, 4, [&](auto u, auto v) { return b.apply_at(x, u, v); });
  fill2(2, 4, [&](auto u, auto v) { return c.apply_at(x, u, v); });
  fill2(1, 6, [&](auto u, auto v) { return b.apply_at(x, u, v); });
  fill2(2, 5, [&](auto u, auto v) { return b.apply_at(x, v, u); });  // (w02, v1)
  fill2(3, 4, [&](auto u, auto v) { return b.apply_at(x, u, v); });  // (w01, v2)
  {
    Partition lam({1, 2, 4});
    MLMap<Rat> m = MLMap<Rat>::zero(cube, lam);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        for (unsigned l = 0; l < n; ++l) {
          std::vector<Rat> w0 = basis(i), v1 = basis(j), v2 = basis(l);
          std::vector<Rat> val = b.apply_at(x, w0, c.apply_at(x, v1, v2));
          std::vector<Rat> t2 = b.apply_at(x, b.apply_at(x, w0, v2), v1);
          for (unsigned cc = 0; cc < n; ++cc) val[cc] += t2[cc];
          for (unsigned cc = 0; cc < n; ++cc)
            for (unsigned aa = 0; aa < n; ++aa)
              for (unsigned bb = 0; bb < n; ++bb) {
                Poly p = b.coeff(cc, aa, bb);
                Rat dd(0);
                for (unsigned q = 0; q < n; ++q) dd += p.derivative(q).eval_rat(x) * v2[q];
                val[cc] += dd * w0[aa] * v1[bb];
              }
          unsigned idx[3] = {i, j, l};
          for (unsigned cc = 0; cc < n; ++cc) m.at(idx, cc) = val[cc];
        }
    if (!m.is_zero()) f.family.emplace(lam, std::move(m));
  }
  f.prune();
  return f;
}

}  // namespace jetcalc
