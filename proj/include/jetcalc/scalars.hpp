#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "jetcalc/multiindex.hpp"
#include "jetcalc/mutation.hpp"
#include "jetcalc/rational.hpp"

namespace jetcalc {

// Element of the k-th iterated dual-number ring over R: 2^k coefficients
// indexed by multi-index masks; every unit squares to zero, so the product
// is a disjoint-support convolution. R must be a commutative ring type with
// default construction = 0 and construction from int.
template <typename R = Rat>
class TkScalar {
 public:
  TkScalar() : k_(1), c_(2) {}
  explicit TkScalar(int k) : k_(k), c_(std::size_t(1) << k) { check_order(k); }
  TkScalar(int k, std::vector<R> coeff) : k_(k), c_(std::move(coeff)) {
    check_order(k);
    if (c_.size() != std::size_t(1) << k) throw std::invalid_argument("coefficient count != 2^k");
  }

  static TkScalar constant(int k, R a) {
    TkScalar s(k);
    s.c_[0] = std::move(a);
    return s;
  }
  static TkScalar one(int k) { return constant(k, R(1)); }
  // the unit eps_i, 1-based
  static TkScalar unit(int k, int i) {
    TkScalar s(k);
    if (i < 1 || i > k) throw std::invalid_argument("unit index out of range");
    s.c_[Mask(1) << (i - 1)] = R(1);
    return s;
  }

  int order() const { return k_; }
  std::size_t size() const { return c_.size(); }
  const R& operator[](Mask a) const { return c_[a]; }
  R& operator[](Mask a) { return c_[a]; }
  const std::vector<R>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const R& x : c_)
      if (!(x == R(0))) return false;
    return true;
  }

  friend bool operator==(const TkScalar& a, const TkScalar& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

  TkScalar operator-() const {
    TkScalar r(k_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }
  TkScalar& operator+=(const TkScalar& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TkScalar& operator-=(const TkScalar& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += -o.c_[i];
    return *this;
  }
  friend TkScalar operator+(TkScalar a, const TkScalar& b) { a += b; return a; }
  friend TkScalar operator-(TkScalar a, const TkScalar& b) { a -= b; return a; }

  friend TkScalar operator*(const TkScalar& a, const TkScalar& b) {
    a.require_same(b);
    TkScalar r(a.k_);
    const bool keep_overlap = active_mutation() == Mutation::tk_mul_overlap;
    const Mask n = Mask(a.c_.size());
    for (Mask ga = 0; ga < n; ++ga) {
      if (a.c_[ga] == R(0)) continue;
      for (Mask gb = 0; gb < n; ++gb) {
        if (!disjoint(ga, gb) && !keep_overlap) continue;
        if (b.c_[gb] == R(0)) continue;
        r.c_[ga | gb] += a.c_[ga] * b.c_[gb];
      }
    }
    return r;
  }
  TkScalar& operator*=(const TkScalar& o) { return *this = *this * o; }

  TkScalar scaled(const Rat& s) const {
    TkScalar r(k_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
  }

  // Nilpotent part (zero spacial coefficient).
  TkScalar nilpotent_part() const {
    TkScalar r = *this;
    r.c_[0] = R(0);
    return r;
  }

 private:
  void require_same(const TkScalar& o) const {
    if (k_ != o.k_) throw std::invalid_argument("order mismatch");
  }

  int k_;
  std::vector<R> c_;
};

template <typename R>
TkScalar<R> operator*(const TkScalar<R>& a, const Rat& s) {
  return a.scaled(s);
}

// Inverse by the finite Neumann series of the nilpotent part; requires an
// invertible spacial coefficient (only available over a field scalar).
inline TkScalar<Rat> tk_inv(const TkScalar<Rat>& a) {
  if (a[0].is_zero()) throw std::domain_error("not invertible: zero spacial part");
  const int k = a.order();
  Rat c0inv = a[0].inv();
  TkScalar<Rat> n = a.nilpotent_part().scaled(c0inv);  // a = c0 (1 + n)
  TkScalar<Rat> acc = TkScalar<Rat>::one(k);
  TkScalar<Rat> pw = TkScalar<Rat>::one(k);
  for (int j = 1; j <= k; ++j) {
    pw = pw * (-n);
    acc += pw;
  }
  return acc.scaled(c0inv);
}

// Action of a permutation of the units; a ring automorphism.
template <typename R>
TkScalar<R> sigma_act(const Perm& s, const TkScalar<R>& a) {
  if (static_cast<int>(s.size()) != a.order())
    throw std::invalid_argument("permutation size != order");
  TkScalar<R> r(a.order());
  const Mask n = Mask(a.size());
  for (Mask g = 0; g < n; ++g) r[apply_perm(s, g)] = a[g];
  return r;
}

// Jet scalar: k+1 coefficients in the basis of elementary symmetric unit
// sums; products truncate past degree k.
template <typename R = Rat>
class JetScalar {
 public:
  JetScalar() : k_(1), c_(2) {}
  explicit JetScalar(int k) : k_(k), c_(k + 1) { check_order(k); }
  JetScalar(int k, std::vector<R> coeff) : k_(k), c_(std::move(coeff)) {
    check_order(k);
    if (c_.size() != std::size_t(k) + 1) throw std::invalid_argument("coefficient count != k+1");
  }

  static JetScalar constant(int k, R a) {
    JetScalar s(k);
    s.c_[0] = std::move(a);
    return s;
  }
  static JetScalar one(int k) { return constant(k, R(1)); }
  // delta^(j): the degree-j basis element
  static JetScalar basis(int k, int j) {
    JetScalar s(k);
    if (j < 0 || j > k) throw std::invalid_argument("jet degree out of range");
    s.c_[j] = R(1);
    return s;
  }

  int order() const { return k_; }
  const R& operator[](int j) const { return c_[j]; }
  R& operator[](int j) { return c_[j]; }
  const std::vector<R>& coeffs() const { return c_; }

  friend bool operator==(const JetScalar& a, const JetScalar& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

  JetScalar operator-() const {
    JetScalar r(k_);
    for (int i = 0; i <= k_; ++i) r.c_[i] = -c_[i];
    return r;
  }
  JetScalar& operator+=(const JetScalar& o) {
    require_same(o);
    for (int i = 0; i <= k_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  JetScalar& operator-=(const JetScalar& o) {
    require_same(o);
    for (int i = 0; i <= k_; ++i) c_[i] += -o.c_[i];
    return *this;
  }
  friend JetScalar operator+(JetScalar a, const JetScalar& b) { a += b; return a; }
  friend JetScalar operator-(JetScalar a, const JetScalar& b) { a -= b; return a; }

  // basis rule: delta^(i) * delta^(j) = C(i+j, i) delta^(i+j), zero past k
  friend JetScalar operator*(const JetScalar& a, const JetScalar& b) {
    a.require_same(b);
    JetScalar r(a.k_);
    const bool drop_binom = active_mutation() == Mutation::jet_binomial;
    for (int i = 0; i <= a.k_; ++i) {
      if (a.c_[i] == R(0)) continue;
      for (int j = 0; i + j <= a.k_; ++j) {
        if (b.c_[j] == R(0)) continue;
        Rat coef = drop_binom ? Rat(1) : Rat(binomial(unsigned(i + j), unsigned(i)));
        r.c_[i + j] += (a.c_[i] * b.c_[j]) * coef;
      }
    }
    return r;
  }
  JetScalar& operator*=(const JetScalar& o) { return *this = *this * o; }

  JetScalar scaled(const Rat& s) const {
    JetScalar r(k_);
    for (int i = 0; i <= k_; ++i) r.c_[i] = c_[i] * s;
    return r;
  }

 private:
  void require_same(const JetScalar& o) const {
    if (k_ != o.k_) throw std::invalid_argument("order mismatch");
  }

  int k_;
  std::vector<R> c_;
};

template <typename R>
JetScalar<R> operator*(const JetScalar<R>& a, const Rat& s) {
  return a.scaled(s);
}

inline JetScalar<Rat> jk_inv(const JetScalar<Rat>& a) {
  if (a[0].is_zero()) throw std::domain_error("not invertible: zero spacial part");
  const int k = a.order();
  Rat c0inv = a[0].inv();
  JetScalar<Rat> n = a.scaled(c0inv);
  n[0] = Rat(0);
  JetScalar<Rat> acc = JetScalar<Rat>::one(k);
  JetScalar<Rat> pw = JetScalar<Rat>::one(k);
  for (int j = 1; j <= k; ++j) {
    pw = pw * (-n);
    acc += pw;
  }
  return acc.scaled(c0inv);
}

// delta^(j) -> sum of all eps products of weight j; a ring homomorphism onto
// the symmetric subring.
template <typename R>
TkScalar<R> jet_embed(const JetScalar<R>& a) {
  const int k = a.order();
  TkScalar<R> r(k);
  const Mask n = Mask(r.size());
  for (Mask g = 0; g < n; ++g) r[g] = a[weight(g)];
  return r;
}

template <typename R>
bool is_symmetric(const TkScalar<R>& a) {
  const int k = a.order();
  for (int i = 0; i + 1 < k; ++i)
    if (!(sigma_act(transposition(k, i, i + 1), a) == a)) return false;
  return true;
}

template <typename R>
JetScalar<R> jet_project(const TkScalar<R>& a) {
  if (!is_symmetric(a)) throw std::domain_error("not Sigma_k-invariant");
  const int k = a.order();
  JetScalar<R> r(k);
  for (int j = 0; j <= k; ++j) r[j] = a[(Mask(1) << j) - 1];  // lowest mask of weight j
  return r;
}

}  // namespace jetcalc
