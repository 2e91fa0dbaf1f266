#pragma once

#include <stdexcept>
#include <vector>

#include "jetcalc/matrix.hpp"
#include "jetcalc/multiindex.hpp"
#include "jetcalc/mutation.hpp"
#include "jetcalc/scalars.hpp"

namespace jetcalc {

// Square matrix over the iterated dual-number ring. Elements of the fiber
// group over the identity have spacial part equal to the identity matrix.
template <typename R = Rat>
using TkMatrix = Matrix<TkScalar<R>>;

template <typename R = Rat>
TkMatrix<R> tk_matrix_zero(int k, unsigned n) {
  return TkMatrix<R>(n, n, TkScalar<R>(k));
}

template <typename R = Rat>
TkMatrix<R> tk_matrix_identity(int k, unsigned n) {
  TkMatrix<R> m = tk_matrix_zero<R>(k, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = TkScalar<R>::constant(k, R(1));
  return m;
}

template <typename R>
Matrix<R> tk_component(const TkMatrix<R>& m, Mask g) {
  Matrix<R> out(m.rows(), m.cols());
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j)[g];
  return out;
}

template <typename R>
void tk_set_component(TkMatrix<R>& m, Mask g, const Matrix<R>& v) {
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) m.at(i, j)[g] = v.at(i, j);
}

template <typename R>
bool in_identity_fiber(const TkMatrix<R>& m) {
  Matrix<R> sp = tk_component(m, 0);
  return sp == Matrix<R>::identity(m.rows());
}

// Inverse over the dual-number ring: invert the spacial matrix exactly, then
// run the finite Neumann series on the nilpotent remainder.
inline TkMatrix<Rat> tk_matrix_inv(const TkMatrix<Rat>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const unsigned n = m.rows();
  int k = m.at(0, 0).order();
  Matrix<Rat> sp = tk_component(m, 0);
  Matrix<Rat> sp_inv = inverse(sp);  // throws when the spacial part is singular
  TkMatrix<Rat> sp_inv_tk = tk_matrix_identity<Rat>(k, n);
  tk_set_component(sp_inv_tk, 0, sp_inv);
  TkMatrix<Rat> rem = sp_inv_tk * m;  // identity + nilpotent
  TkMatrix<Rat> nil = rem - tk_matrix_identity<Rat>(k, n);
  TkMatrix<Rat> acc = tk_matrix_identity<Rat>(k, n);
  TkMatrix<Rat> pw = tk_matrix_identity<Rat>(k, n);
  for (int j = 1; j <= k; ++j) {
    pw = pw * (-nil);
    acc += pw;
  }
  return acc * sp_inv_tk;
}

// identity + eps^alpha v
inline TkMatrix<Rat> axis_element(int k, Mask alpha, const Matrix<Rat>& v) {
  TkMatrix<Rat> m = tk_matrix_identity<Rat>(k, v.rows());
  Matrix<Rat> base = tk_component(m, alpha);
  tk_set_component(m, alpha, base + v);
  return m;
}

// Group commutator of two axis elements by direct matrix arithmetic.
inline TkMatrix<Rat> axis_commutator(int k, Mask alpha, Mask beta, const Matrix<Rat>& v,
                                     const Matrix<Rat>& w) {
  if (alpha == 0 || beta == 0) throw std::invalid_argument("axis masks must be nonzero");
  TkMatrix<Rat> a = axis_element(k, alpha, v);
  TkMatrix<Rat> b = axis_element(k, beta, w);
  return a * b * tk_matrix_inv(a) * tk_matrix_inv(b);
}

template <typename R>
TkMatrix<R> sigma_act(const Perm& s, const TkMatrix<R>& m) {
  TkMatrix<R> out(m.rows(), m.cols());
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) out.at(i, j) = sigma_act(s, m.at(i, j));
  return out;
}

// Trivialization coordinates: one Lie-algebra element per nonzero mask.
template <typename R = Rat>
struct AxesVector {
  int k = 1;
  unsigned n = 0;
  std::vector<Matrix<R>> comps;  // indexed by mask; comps[0] unused

  AxesVector() = default;
  AxesVector(int k_, unsigned n_)
      : k(k_), n(n_), comps(std::size_t(1) << k_, Matrix<R>(n_, n_)) {
    check_order(k_);
  }
  friend bool operator==(const AxesVector& a, const AxesVector& b) {
    return a.k == b.k && a.n == b.n && a.comps == b.comps;
  }
};

enum class Side { left, right };

// Ordered product of axis elements: ascending mask order for the left
// trivialization, descending for the right.
inline TkMatrix<Rat> untrivialize(Side side, const AxesVector<Rat>& v) {
  TkMatrix<Rat> g = tk_matrix_identity<Rat>(v.k, v.n);
  const Mask count = Mask(v.comps.size());
  if (side == Side::left) {
    for (Mask m = 1; m < count; ++m) g = g * axis_element(v.k, m, v.comps[m]);
  } else {
    for (Mask m = count - 1; m >= 1; --m) g = g * axis_element(v.k, m, v.comps[m]);
  }
  return g;
}

// Peel the ordered product one axis at a time; each step fixes exactly one
// coefficient, so the decomposition is unique.
inline AxesVector<Rat> trivialize(Side side, const TkMatrix<Rat>& g) {
  if (!in_identity_fiber(g)) throw std::invalid_argument("matrix is not in the identity fiber");
  int k = g.at(0, 0).order();
  AxesVector<Rat> v(k, g.rows());
  TkMatrix<Rat> cur = g;
  for (Mask m = 1; m < Mask(v.comps.size()); ++m) {
    v.comps[m] = tk_component(cur, m);
    TkMatrix<Rat> peel = tk_matrix_inv(axis_element(k, m, v.comps[m]));
    cur = side == Side::left ? peel * cur : cur * peel;
  }
  if (!(cur == tk_matrix_identity<Rat>(k, g.rows())))
    throw std::logic_error("trivialization did not terminate at the identity");
  return v;
}

namespace detail {

// Left-nested bracket [[a, b_1], b_2], ..., b_m.
template <typename R>
Matrix<R> left_nested(const Matrix<R>& head, const std::vector<Matrix<R>>& tail) {
  Matrix<R> acc = head;
  for (const Matrix<R>& t : tail) acc = commutator(acc, t);
  return acc;
}

}  // namespace detail

// Group product in the left trivialization: for each target mask, the sum of
// the two components plus one left-nested bracket per partition, with the
// largest part taken from the first factor.
template <typename R>
AxesVector<R> left_product(const AxesVector<R>& v, const AxesVector<R>& w) {
  if (v.k != w.k || v.n != w.n) throw std::invalid_argument("axes mismatch");
  const bool wrong_nesting = active_mutation() == Mutation::leftprod_nesting;
  AxesVector<R> z(v.k, v.n);
  for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
    Matrix<R> acc = v.comps[g] + w.comps[g];
    if (weight(g) >= 2) {
      for (const Partition& lam : enumerate_partitions(g)) {
        const std::size_t m = lam.length();
        if (m < 2) continue;
        if (!wrong_nesting) {
          Matrix<R> t = commutator(v.comps[lam.parts[m - 1]], w.comps[lam.parts[0]]);
          for (std::size_t i = 1; i + 1 < m; ++i) t = commutator(t, w.comps[lam.parts[i]]);
          acc += t;
        } else {
          // planted defect: nest from the right instead
          Matrix<R> t = w.comps[lam.parts[m - 2]];
          for (std::size_t i = m - 2; i-- > 0;) t = commutator(w.comps[lam.parts[i]], t);
          acc += commutator(v.comps[lam.parts[m - 1]], t);
        }
      }
    }
    z.comps[g] = std::move(acc);
  }
  return z;
}

// Inverse in the left trivialization: alternating-sign left-nested brackets
// with the parts taken in decreasing order.
template <typename R>
AxesVector<R> left_inverse(const AxesVector<R>& v) {
  AxesVector<R> z(v.k, v.n);
  for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
    Matrix<R> acc = -v.comps[g];
    if (weight(g) >= 2) {
      for (const Partition& lam : enumerate_partitions(g)) {
        const std::size_t m = lam.length();
        if (m < 2) continue;
        Matrix<R> t = commutator(v.comps[lam.parts[m - 1]], v.comps[lam.parts[m - 2]]);
        for (std::size_t i = m - 2; i-- > 0;) t = commutator(t, v.comps[lam.parts[i]]);
        acc += t * Rat((m % 2) ? -1 : 1);
      }
    }
    z.comps[g] = std::move(acc);
  }
  return z;
}

// Group product in the right trivialization: right-nested brackets with the
// largest part taken from the second factor.
template <typename R>
AxesVector<R> right_product(const AxesVector<R>& v, const AxesVector<R>& w) {
  if (v.k != w.k || v.n != w.n) throw std::invalid_argument("axes mismatch");
  AxesVector<R> z(v.k, v.n);
  for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
    Matrix<R> acc = v.comps[g] + w.comps[g];
    if (weight(g) >= 2) {
      for (const Partition& lam : enumerate_partitions(g)) {
        const std::size_t m = lam.length();
        if (m < 2) continue;
        Matrix<R> t = commutator(v.comps[lam.parts[0]], w.comps[lam.parts[m - 1]]);
        for (std::size_t i = 1; i + 1 < m; ++i) t = commutator(v.comps[lam.parts[i]], t);
        acc += t;
      }
    }
    z.comps[g] = std::move(acc);
  }
  return z;
}

// Exponential in left coordinates. For each partition the bracket nests the
// largest part innermost; all orderings of the remaining parts contribute.
template <typename R>
AxesVector<R> exp_left(const AxesVector<R>& v) {
  AxesVector<R> z(v.k, v.n);
  for (Mask g = 1; g < Mask(z.comps.size()); ++g) {
    Matrix<R> acc = v.comps[g];
    for (int j = 2; j <= weight(g); ++j) {
      Rat wgt = Rat(Integer(1), factorial(unsigned(j)));
      for (const Partition& lam : enumerate_partitions(g, j)) {
        std::vector<std::size_t> order(j - 1);
        for (std::size_t i = 0; i + 1 < std::size_t(j); ++i) order[i] = i;
        // sum over all orders of the non-maximal parts
        do {
          Matrix<R> t = v.comps[lam.parts[j - 1]];
          for (std::size_t i = order.size(); i-- > 0;)
            t = commutator(t, v.comps[lam.parts[order[i]]]);
          acc += t * wgt;
        } while (std::next_permutation(order.begin(), order.end()));
      }
    }
    z.comps[g] = std::move(acc);
  }
  return z;
}

// The fiber group in left coordinates as a concrete polynomial group.
struct AxesGroup {
  int k;
  unsigned n;
  using Elem = AxesVector<Rat>;
  Elem mul(const Elem& a, const Elem& b) const { return left_product(a, b); }
  Elem zero() const { return Elem(k, n); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (Mask g = 1; g < Mask(r.comps.size()); ++g) r.comps[g] += b.comps[g];
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

}  // namespace jetcalc
