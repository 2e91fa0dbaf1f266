// jetcalc: exact rational jet arithmetic and verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "jetcalc/expr.hpp"
#include "jetcalc/json_io.hpp"
#include "jetcalc/mutation.hpp"
#include "jetcalc/poly.hpp"
#include "jetcalc/rational.hpp"
#include "jetcalc/scalars.hpp"
#include "jetcalc/scalars_io.hpp"
#include "jetcalc/verify.hpp"

namespace {

using namespace jetcalc;

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::string cur;
  auto flush = [&]() {
    std::string t;
    for (char ch : cur)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw std::invalid_argument("empty entry in rational list");
    out.push_back(Rat::from_string(t));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',')
      flush();
    else
      cur += ch;
  }
  flush();
  return out;
}

std::string mask_key(Mask g, int k) {
  std::string key;
  for (int i = 1; i <= k; ++i) {
    if (!(g & (Mask(1) << (i - 1)))) continue;
    if (!key.empty() && k > 9) key += ",";
    key += std::to_string(i);
  }
  return key;
}

int run_taylor(int order, const std::string& at, const std::string& dir, const std::string& src,
               bool verbose) {
  Expr e = parse_expr(src);
  std::vector<std::string> vars = collect_vars(e);
  if (vars.empty()) throw std::invalid_argument("expression has no variables");
  std::vector<Rat> x = parse_rat_list(at);
  std::vector<Rat> v = parse_rat_list(dir);
  if (x.size() != vars.size() || v.size() != vars.size())
    throw std::invalid_argument("--at/--dir must list one rational per variable");
  std::map<std::string, JetScalar<Rat>> env;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    JetScalar<Rat> coord = JetScalar<Rat>::constant(order, x[i]);
    coord[1] = v[i];
    env[vars[i]] = coord;
  }
  JetScalar<Rat> value = eval_expr(e, env, JetScalar<Rat>::one(order),
                                   [](const JetScalar<Rat>& a) { return jk_inv(a); });
  std::vector<Rat> jet_components(value.coeffs());
  std::vector<Rat> coefficients(jet_components);
  for (int j = 2; j <= order; ++j) coefficients[j] *= Rat(Integer(1), factorial(unsigned(j)));

  // embedded self-check: sum_j a_j t^j must agree with the expression along
  // x + t v to order k, via the formal numerator/denominator pair
  {
    RatFunc rf = expr_to_ratfunc(e, vars);
    std::vector<Poly> line;
    line.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
      line.push_back(Poly(x[i]) + Poly::var(0) * v[i]);
    Poly pnum = rf.num.subst(line), pden = rf.den.subst(line);
    Poly series;
    for (int j = 0; j <= order; ++j) {
      Poly tpow(1);
      for (int r = 0; r < j; ++r) tpow *= Poly::var(0);
      series += tpow * coefficients[j];
    }
    Poly diff = series * pden - pnum;
    for (int j = 0; j <= order; ++j)
      if (!diff.coeff_of(0, unsigned(j)).is_zero())
        throw std::logic_error("taylor self-check failed");
  }

  std::cout << json_object({{"coefficients", json_rat_array(coefficients)},
                            {"jet_components", json_rat_array(jet_components)}})
            << "\n";
  if (verbose) {
    std::cerr << "taylor expansion to order " << order << " of " << print_expr(e) << "\n";
    for (int j = 0; j <= order; ++j)
      std::cerr << "  t^" << j << ": " << coefficients[j].str() << "\n";
  }
  return 0;
}

int run_tk_eval(int order, const std::string& point, const std::string& src, bool verbose) {
  Expr e = parse_expr(src);
  std::vector<std::string> vars = collect_vars(e);
  std::map<std::string, TkScalar<Rat>> env;
  if (point.find('=') == std::string::npos) {
    if (vars.size() != 1)
      throw std::invalid_argument("--point needs name=value entries for several variables");
    env[vars[0]] = parse_tk(point, order);
  } else {
    std::string item;
    auto flush = [&]() {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad --point entry: " + item);
      std::string name;
      for (char ch : item.substr(0, eq))
        if (!std::isspace(static_cast<unsigned char>(ch))) name += ch;
      env[name] = parse_tk(item.substr(eq + 1), order);
      item.clear();
    };
    for (char ch : point) {
      if (ch == ';')
        flush();
      else
        item += ch;
    }
    if (!item.empty()) flush();
  }
  for (const std::string& name : vars)
    if (!env.count(name)) throw std::invalid_argument("--point does not bind variable " + name);
  TkScalar<Rat> value = eval_expr(e, env, TkScalar<Rat>::one(order),
                                  [](const TkScalar<Rat>& a) { return tk_inv(a); });
  std::vector<std::pair<std::string, std::string>> kv;
  for (Mask g = 0; g < Mask(value.size()); ++g)
    kv.push_back({mask_key(g, order), json_rat(value[g])});
  std::cout << json_object(kv) << "\n";
  if (verbose) std::cerr << "value: " << print_tk(value) << "\n";
  return 0;
}

int run_verify(const std::string& suite, int cases, std::uint64_t seed, bool verbose) {
  Report rep = run_suite(suite, cases, seed);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string fails = "[";
  for (std::size_t i = 0; i < rep.failures.size(); ++i) {
    const Failure& f = rep.failures[i];
    if (i) fails += ", ";
    fails += json_object({{"case", std::to_string(f.case_index)},
                          {"name", json_string(f.name)},
                          {"detail", json_string(f.detail)}});
  }
  fails += "]";
  std::cout << json_object({{"suite", json_string(rep.suite)},
                            {"cases", std::to_string(rep.cases)},
                            {"failures", fails}})
            << "\n";
  if (verbose)
    std::cerr << "suite " << rep.suite << ": " << rep.failures.size() << " failure(s) over "
              << rep.cases << " cases\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rational jet arithmetic"};
  app.require_subcommand(1);

  int order = 1;
  std::string at, dir, point, expr_src, suite, mutate;
  bool verbose = false;
  int cases = 50;
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_flag("--verbose", verbose, "human-readable rendering on standard error");

  CLI::App* taylor = app.add_subcommand("taylor", "Taylor coefficients along a ray");
  taylor->add_option("--order", order, "jet order k")->required();
  taylor->add_option("--at", at, "base point, comma-separated rationals")->required();
  taylor->add_option("--dir", dir, "direction, comma-separated rationals")->required();
  taylor->add_option("expr", expr_src, "expression")->required();

  CLI::App* tkeval = app.add_subcommand("tk-eval", "evaluate over the iterated dual numbers");
  tkeval->add_option("--order", order, "jet order k")->required();
  tkeval->add_option("--point", point, "point, e.g. \"1 + e1 + e2\" or \"x=1+e1; y=2\"")
      ->required();
  tkeval->add_option("expr", expr_src, "expression")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "rings|jets|multilinear|polygroup|liegroups|connections|all")
      ->required();
  verify->add_option("--cases", cases, "number of randomized cases");
  verify->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
    seed_given = true;
  });
  verify->add_option("--mutate", mutate, "fault injection id (testing only)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (taylor->parsed()) return run_taylor(order, at, dir, expr_src, verbose);
    if (tkeval->parsed()) return run_tk_eval(order, point, expr_src, verbose);
    if (verify->parsed()) {
      if (!jetcalc::is_suite_name(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
      }
      if (!seed_given) {
        if (const char* env_seed = std::getenv("JETCALC_SEED"))
          seed = std::strtoull(env_seed, nullptr, 10);
      }
      if (!mutate.empty() && !jetcalc::set_mutation_by_name(mutate)) {
        std::cerr << "unknown mutation id: " << mutate << "\n";
        return 2;
      }
      return run_verify(suite, cases, seed, verbose);
    }
  } catch (const jetcalc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
