#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "jetcalc/connections.hpp"
#include "jetcalc/poly.hpp"

namespace jetcalc {

// Alternating polynomial p-form on Q^n: one polynomial coefficient per
// increasing index tuple; only the alternation is stored. A 0-form is a
// single polynomial function.
struct DiffForm {
  unsigned degree = 0;  // p
  unsigned n = 0;
  std::map<std::vector<unsigned>, Poly> coeffs;  // key: increasing tuple of size p

  DiffForm() = default;
  // degree > n is allowed and is necessarily the zero form
  DiffForm(unsigned p, unsigned n_) : degree(p), n(n_) {}

  void set(std::vector<unsigned> idx, Poly p) {
    if (idx.size() != degree) throw std::invalid_argument("index tuple size != degree");
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] >= idx[i + 1]) throw std::invalid_argument("index tuple not increasing");
    for (unsigned i : idx)
      if (i >= n) throw std::invalid_argument("index out of range");
    if (p.is_zero())
      coeffs.erase(idx);
    else
      coeffs[std::move(idx)] = std::move(p);
  }

  const Poly* find(const std::vector<unsigned>& idx) const {
    auto it = coeffs.find(idx);
    return it == coeffs.end() ? nullptr : &it->second;
  }

  bool is_zero() const {
    for (auto& [idx, p] : coeffs)
      if (!p.is_zero()) return false;
    return true;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    if (a.degree != b.degree || a.n != b.n) return false;
    DiffForm x = a, y = b;
    std::erase_if(x.coeffs, [](auto& kv) { return kv.second.is_zero(); });
    std::erase_if(y.coeffs, [](auto& kv) { return kv.second.is_zero(); });
    return x.coeffs == y.coeffs;
  }

  // Value on polynomial slot arguments (components may use any variables):
  // sum over increasing tuples of the coefficient times the minor
  // determinant of the arguments.
  Poly value(std::span<const std::vector<Poly>> args) const {
    if (args.size() != degree) throw std::invalid_argument("argument count != degree");
    Poly acc;
    for (auto& [idx, coeff] : coeffs) {
      // determinant of the p x p minor args[r][idx[s]]
      Poly det;
      std::vector<int> perm(degree);
      for (unsigned i = 0; i < degree; ++i) perm[i] = static_cast<int>(i);
      if (degree == 0) {
        det = Poly(1);
      } else {
        do {
          int sgn = 1;
          for (unsigned i = 0; i < degree; ++i)
            for (unsigned j = i + 1; j < degree; ++j)
              if (perm[i] > perm[j]) sgn = -sgn;
          Poly prod(1);
          for (unsigned r = 0; r < degree; ++r) prod *= args[r][idx[perm[r]]];
          det += prod * Rat(sgn);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      acc += coeff * det;
    }
    return acc;
  }

  Rat value_at(std::span<const Rat> x, std::span<const std::vector<Rat>> args) const {
    std::vector<std::vector<Poly>> polys;
    polys.reserve(args.size());
    for (auto& a : args) {
      std::vector<Poly> v;
      for (const Rat& c : a) v.push_back(Poly(c));
      polys.push_back(std::move(v));
    }
    return value(polys).eval_rat(x);
  }
};

// Exterior derivative. For p >= 1 the chart rule with 1-based alternating
// signs starting at -1; a 0-form gets the ordinary differential.
inline DiffForm exterior_derivative(const DiffForm& w) {
  DiffForm d(w.degree + 1, w.n);
  if (w.degree == 0) {
    Poly f = w.coeffs.empty() ? Poly() : w.coeffs.begin()->second;
    for (unsigned i = 0; i < w.n; ++i) d.set({i}, f.derivative(i));
    return d;
  }
  // iterate increasing tuples of size p+1
  std::vector<unsigned> idx(w.degree + 1);
  for (unsigned i = 0; i <= w.degree; ++i) idx[i] = i;
  auto advance = [&]() -> bool {
    int i = static_cast<int>(idx.size()) - 1;
    while (i >= 0) {
      if (idx[i] + (idx.size() - 1 - i) < w.n - 1 + 0u) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
      --i;
    }
    return false;
  };
  if (w.n < w.degree + 1) return d;
  for (;;) {
    Poly acc;
    for (unsigned r = 0; r < idx.size(); ++r) {
      std::vector<unsigned> rest;
      for (unsigned s = 0; s < idx.size(); ++s)
        if (s != r) rest.push_back(idx[s]);
      if (const Poly* c = w.find(rest)) {
        Poly term = c->derivative(idx[r]);
        acc += (r % 2 == 0) ? -term : term;  // (-1)^(r+1) with 1-based position
      }
    }
    if (!acc.is_zero()) d.set(idx, std::move(acc));
    if (!advance()) break;
  }
  return d;
}

// Evaluation of the derivative on polynomial vector fields: directional
// derivatives of the slotted values plus the bracket corrections.
inline Poly d_on_fields(const DiffForm& w, std::span<const VectorField> fields) {
  if (fields.size() != w.degree + 1) throw std::invalid_argument("field count != degree+1");
  const unsigned n = w.n;
  auto value_of = [&](std::vector<const VectorField*> chosen) {
    std::vector<std::vector<Poly>> args;
    args.reserve(chosen.size());
    for (const VectorField* f : chosen) args.push_back(f->components());
    return w.value(args);
  };
  Poly acc;
  for (unsigned i = 0; i < fields.size(); ++i) {
    std::vector<const VectorField*> rest;
    for (unsigned s = 0; s < fields.size(); ++s)
      if (s != i) rest.push_back(&fields[s]);
    Poly val = value_of(rest);
    Poly dir;
    for (unsigned j = 0; j < n; ++j) dir += val.derivative(j) * fields[i].component(j);
    acc += (i % 2 == 0) ? -dir : dir;  // (-1)^(i+1), 1-based
  }
  for (unsigned i = 0; i < fields.size(); ++i)
    for (unsigned j = i + 1; j < fields.size(); ++j) {
      VectorField br = vf_bracket(fields[i], fields[j]);
      std::vector<const VectorField*> rest{&br};
      for (unsigned s = 0; s < fields.size(); ++s)
        if (s != i && s != j) rest.push_back(&fields[s]);
      Poly val = value_of(rest);
      acc += ((i + j) % 2 == 0) ? val : -val;  // (-1)^(i+j) with 1-based positions
    }
  return acc;
}

}  // namespace jetcalc
