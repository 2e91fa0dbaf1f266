#include "jetcalc/scalars_io.hpp"

#include <map>

#include "jetcalc/expr.hpp"

namespace jetcalc {

namespace {

void append_term(std::string& out, const Rat& c, const std::string& unit) {
  if (c.is_zero()) return;
  Rat a = c;
  if (out.empty()) {
    if (a.sign() < 0) {
      out += "-";
      a = -a;
    }
  } else {
    out += a.sign() < 0 ? " - " : " + ";
    if (a.sign() < 0) a = -a;
  }
  if (unit.empty()) {
    out += a.str();
  } else if (a == Rat(1)) {
    out += unit;
  } else {
    out += a.str() + "*" + unit;
  }
}

}  // namespace

std::string mask_unit_name(Mask g, int k) {
  std::string name;
  for (int i = 1; i <= k; ++i) {
    if (!(g & (Mask(1) << (i - 1)))) continue;
    if (!name.empty() && k > 9) name += "*";
    name += "e" + std::to_string(i);
  }
  return name;
}

std::string print_tk(const TkScalar<Rat>& a) {
  std::string out;
  for (Mask g = 0; g < Mask(a.size()); ++g) append_term(out, a[g], mask_unit_name(g, a.order()));
  return out.empty() ? "0" : out;
}

std::string print_jet(const JetScalar<Rat>& a) {
  std::string out;
  append_term(out, a[0], "");
  for (int j = 1; j <= a.order(); ++j) append_term(out, a[j], "d" + std::to_string(j));
  return out.empty() ? "0" : out;
}

TkScalar<Rat> parse_tk(const std::string& src, int k) {
  check_order(k);
  Expr e = parse_expr(src);
  std::map<std::string, TkScalar<Rat>> env;
  if (k <= 9) {
    for (Mask g = 1; g < (Mask(1) << k); ++g) {
      TkScalar<Rat> v(k);
      v[g] = Rat(1);
      env[mask_unit_name(g, k)] = v;
    }
  } else {
    for (int i = 1; i <= k; ++i) env["e" + std::to_string(i)] = TkScalar<Rat>::unit(k, i);
  }
  return eval_expr(e, env, TkScalar<Rat>::one(k),
                   [](const TkScalar<Rat>& x) { return tk_inv(x); });
}

JetScalar<Rat> parse_jet(const std::string& src, int k) {
  check_order(k);
  Expr e = parse_expr(src);
  std::map<std::string, JetScalar<Rat>> env;
  for (int j = 1; j <= k; ++j) env["d" + std::to_string(j)] = JetScalar<Rat>::basis(k, j);
  return eval_expr(e, env, JetScalar<Rat>::one(k),
                   [](const JetScalar<Rat>& x) { return jk_inv(x); });
}

}  // namespace jetcalc
