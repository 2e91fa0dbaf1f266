#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

// Minimal dense matrix over a commutative ring. Entry types whose default
// construction is not the right zero (the dual-number scalars carry an
// order) use the prototype-zero constructor.
template <typename T = Rat>
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned rows, unsigned cols) : r_(rows), c_(cols), d_(std::size_t(rows) * cols, T{}) {}
  Matrix(unsigned rows, unsigned cols, const T& zero)
      : r_(rows), c_(cols), d_(std::size_t(rows) * cols, zero) {}

  static Matrix identity(unsigned n) {
    Matrix m(n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  unsigned rows() const { return r_; }
  unsigned cols() const { return c_; }
  T& at(unsigned i, unsigned j) { return d_[std::size_t(i) * c_ + j]; }
  const T& at(unsigned i, unsigned j) const { return d_[std::size_t(i) * c_ + j]; }

  bool is_zero() const {
    if (d_.empty()) return true;
    T zero = d_.front();
    zero -= d_.front();
    for (const T& x : d_)
      if (!(x == zero)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (T& x : m.d_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
  friend Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_ || a.c_ == 0) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(a.r_, b.c_, [&] {
      T zero = a.d_.front() * b.d_.front();
      zero -= zero;
      return zero;
    }());
    for (unsigned i = 0; i < a.r_; ++i)
      for (unsigned l = 0; l < a.c_; ++l)
        for (unsigned j = 0; j < b.c_; ++j) m.at(i, j) += a.at(i, l) * b.at(l, j);
    return m;
  }
  Matrix operator*(const Rat& s) const {
    Matrix m = *this;
    for (T& x : m.d_) x = x * s;
    return m;
  }

  friend Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

 private:
  void require_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }

  unsigned r_ = 0, c_ = 0;
  std::vector<T> d_;
};

// Exact Gauss-Jordan inverse; throws on a singular input.
inline Matrix<Rat> inverse(const Matrix<Rat>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const unsigned n = a.rows();
  Matrix<Rat> m = a;
  Matrix<Rat> inv = Matrix<Rat>::identity(n);
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && m.at(piv, col).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("matrix is singular");
    if (piv != col)
      for (unsigned j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Rat p = m.at(col, col).inv();
    for (unsigned j = 0; j < n; ++j) {
      m.at(col, j) *= p;
      inv.at(col, j) *= p;
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || m.at(i, col).is_zero()) continue;
      Rat f = m.at(i, col);
      for (unsigned j = 0; j < n; ++j) {
        m.at(i, j) -= f * m.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// Solve A x = b exactly.
inline std::vector<Rat> solve_linear(const Matrix<Rat>& a, std::span<const Rat> b) {
  Matrix<Rat> ai = inverse(a);
  std::vector<Rat> x(a.rows(), Rat(0));
  for (unsigned i = 0; i < a.rows(); ++i)
    for (unsigned j = 0; j < a.cols(); ++j) x[i] += ai.at(i, j) * b[j];
  return x;
}

// Rows of the inverse Vandermonde on nodes 0..deg: coefficient j of a
// degree-deg polynomial is the weighted sum of its values at the nodes.
inline Matrix<Rat> inverse_vandermonde(unsigned deg) {
  Matrix<Rat> v(deg + 1, deg + 1);
  for (unsigned t = 0; t <= deg; ++t) {
    Rat pw(1);
    for (unsigned d = 0; d <= deg; ++d) {
      v.at(t, d) = pw;
      pw *= Rat(static_cast<long>(t));
    }
  }
  return inverse(v);
}

}  // namespace jetcalc
