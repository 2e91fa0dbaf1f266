#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

// Monomial: sparse exponent vector, sorted by variable index. Variable
// indices are global, so a polynomial never needs to know its ambient
// dimension; evaluation supplies a value per index.
struct Monomial {
  std::vector<std::pair<unsigned, unsigned>> exps;  // (var, exp>0), sorted

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
  }
  unsigned max_var_plus1() const { return exps.empty() ? 0 : exps.back().first + 1; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps < b.exps; }

  static Monomial var(unsigned i, unsigned e = 1) {
    Monomial m;
    if (e > 0) m.exps.push_back({i, e});
    return m;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.exps.begin(), ib = b.exps.begin();
    while (ia != a.exps.end() || ib != b.exps.end()) {
      if (ib == b.exps.end() || (ia != a.exps.end() && ia->first < ib->first))
        r.exps.push_back(*ia++);
      else if (ia == a.exps.end() || ib->first < ia->first)
        r.exps.push_back(*ib++);
      else {
        r.exps.push_back({ia->first, ia->second + ib->second});
        ++ia, ++ib;
      }
    }
    return r;
  }
};

// Exact multivariate polynomial over the rationals. Canonical form: no zero
// coefficients stored, so equality is structural — this is what makes
// "verify as polynomial identity" an exact check.
class Poly {
 public:
  Poly() = default;
  Poly(int c) { if (c != 0) terms_[Monomial{}] = Rat(c); }
  Poly(const Rat& c) { if (!c.is_zero()) terms_[Monomial{}] = c; }
  static Poly var(unsigned i) {
    Poly p;
    p.terms_[Monomial::var(i)] = Rat(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.exps.empty());
  }
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.begin()->second;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }
  unsigned num_vars() const {  // 1 + max used index
    unsigned n = 0;
    for (auto& [m, c] : terms_) n = std::max(n, m.max_var_plus1());
    return n;
  }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly operator-() const {
    Poly r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (&o == this) {
      for (auto& [m, c] : terms_) c += c;
      return *this;
    }
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (&o == this) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Rat& s) const {
    Poly r;
    if (s.is_zero()) return r;
    for (auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
  }

  // Formal partial derivative with respect to variable i.
  Poly derivative(unsigned i) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      for (std::size_t p = 0; p < m.exps.size(); ++p) {
        if (m.exps[p].first != i) continue;
        Monomial d = m;
        unsigned e = d.exps[p].second;
        if (e == 1)
          d.exps.erase(d.exps.begin() + p);
        else
          d.exps[p].second = e - 1;
        r.add_term(d, c * Rat(static_cast<long>(e)));
        break;
      }
    }
    return r;
  }

  // Evaluation over any commutative ring extension: vals[i] substitutes
  // variable i; the unit of the target ring must be supplied.
  template <typename R>
  R eval(std::span<const R> vals, const R& one) const {
    R acc = one * Rat(0);
    for (auto& [m, c] : terms_) {
      R t = one * c;
      for (auto& [v, e] : m.exps) {
        if (v >= vals.size()) throw std::out_of_range("evaluation point too short");
        for (unsigned r = 0; r < e; ++r) t = t * vals[v];
      }
      acc += t;
    }
    return acc;
  }

  Rat eval_rat(std::span<const Rat> vals) const { return eval<Rat>(vals, Rat(1)); }

  // Substitution of polynomials for variables (evaluation over the Poly ring).
  Poly subst(std::span<const Poly> vals) const { return eval<Poly>(vals, Poly(1)); }

  // Coefficient of t^j when the polynomial is read as a polynomial in
  // variable t with coefficients in the remaining variables.
  Poly coeff_of(unsigned var, unsigned j) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      unsigned e = 0;
      Monomial rest;
      for (auto& [v, ex] : m.exps) {
        if (v == var) e = ex;
        else rest.exps.push_back({v, ex});
      }
      if (e == j) r.add_term(rest, c);
    }
    return r;
  }

  // Exact division by a single variable; the remainder must vanish.
  Poly divide_by_var(unsigned var) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      Monomial d;
      bool found = false;
      for (auto& [v, ex] : m.exps) {
        if (v == var) {
          found = true;
          if (ex > 1) d.exps.push_back({v, ex - 1});
        } else
          d.exps.push_back({v, ex});
      }
      if (!found) throw std::domain_error("not divisible: term without the variable");
      r.add_term(d, c);
    }
    return r;
  }

 private:
  void add_term(const Monomial& m, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<Monomial, Rat> terms_;
};

// Polynomial map between free modules: one scalar polynomial per output
// component, with a declared domain dimension (all used variables < n).
class PolyFunc {
 public:
  PolyFunc() : n_(0) {}
  PolyFunc(unsigned domain_dim, std::vector<Poly> components)
      : n_(domain_dim), comps_(std::move(components)) {
    for (const Poly& p : comps_)
      if (p.num_vars() > n_) throw std::invalid_argument("component uses variable >= domain dim");
  }
  static PolyFunc identity(unsigned n) {
    std::vector<Poly> c;
    c.reserve(n);
    for (unsigned i = 0; i < n; ++i) c.push_back(Poly::var(i));
    return PolyFunc(n, std::move(c));
  }
  static PolyFunc zero(unsigned n, unsigned m) { return PolyFunc(n, std::vector<Poly>(m)); }

  unsigned domain_dim() const { return n_; }
  unsigned codomain_dim() const { return static_cast<unsigned>(comps_.size()); }
  const Poly& component(unsigned i) const { return comps_[i]; }
  Poly& component(unsigned i) { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const Poly& p : comps_) d = std::max(d, p.total_degree());
    return d;
  }

  friend bool operator==(const PolyFunc& a, const PolyFunc& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }

  PolyFunc operator-() const {
    std::vector<Poly> c;
    c.reserve(comps_.size());
    for (const Poly& p : comps_) c.push_back(-p);
    return PolyFunc(n_, std::move(c));
  }
  friend PolyFunc operator+(const PolyFunc& a, const PolyFunc& b) {
    if (a.n_ != b.n_ || a.comps_.size() != b.comps_.size())
      throw std::invalid_argument("dimension mismatch");
    std::vector<Poly> c;
    c.reserve(a.comps_.size());
    for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] + b.comps_[i]);
    return PolyFunc(a.n_, std::move(c));
  }
  friend PolyFunc operator-(const PolyFunc& a, const PolyFunc& b) { return a + (-b); }
  PolyFunc operator*(const Rat& s) const {
    std::vector<Poly> c;
    c.reserve(comps_.size());
    for (const Poly& p : comps_) c.push_back(p * s);
    return PolyFunc(n_, std::move(c));
  }

  template <typename R>
  std::vector<R> eval(std::span<const R> point, const R& one) const {
    if (point.size() < n_) throw std::invalid_argument("point dimension mismatch");
    std::vector<R> out;
    out.reserve(comps_.size());
    for (const Poly& p : comps_) out.push_back(p.eval(point, one));
    return out;
  }
  std::vector<Rat> eval_rat(std::span<const Rat> point) const {
    return eval<Rat>(point, Rat(1));
  }

  // g after f, by exact substitution; degrees grow and that is accepted.
  friend PolyFunc compose(const PolyFunc& g, const PolyFunc& f) {
    if (g.domain_dim() != f.codomain_dim())
      throw std::invalid_argument("compose: dimension mismatch");
    std::vector<Poly> c;
    c.reserve(g.comps_.size());
    for (const Poly& p : g.comps_) c.push_back(p.subst(f.comps_));
    return PolyFunc(f.n_, std::move(c));
  }

 private:
  unsigned n_;
  std::vector<Poly> comps_;
};

}  // namespace jetcalc
