// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] must be the path of the command-line binary.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "jetcalc/connections.hpp"
#include "jetcalc/lie_groups.hpp"
#include "jetcalc/poly_calculus.hpp"
#include "jetcalc/rng.hpp"
#include "jetcalc/scalars.hpp"
#include "jetcalc/sections.hpp"
#include "jetcalc/verify.hpp"

using namespace jetcalc;

namespace {

int g_failures = 0;
std::string g_cli;

void report(int index, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
  std::printf("criterion %d [%s]: %s (%.2fs)%s\n", index, name.c_str(), pass ? "PASS" : "FAIL",
              seconds, detail.empty() ? "" : ("  " + detail).c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename F>
void run_criterion(int index, const std::string& name, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(index, name, pass, dt, detail);
}

bool suite_ok(const std::string& name, int cases, std::uint64_t seed, std::string& detail) {
  Report rep = run_suite(name, cases, seed);
  if (!rep.ok()) {
    std::ostringstream os;
    os << rep.failures.size() << " failure(s), first: " << rep.failures[0].name;
    detail = os.str();
  }
  return rep.ok();
}

PolyFunc random_polyfunc(Rng& rng, unsigned n, unsigned m, unsigned deg) {
  std::vector<Poly> comps;
  for (unsigned c = 0; c < m; ++c) {
    Poly p;
    for (int t = 0; t < 5; ++t) {
      unsigned budget = static_cast<unsigned>(rng.below(deg + 1));
      Poly mono(1);
      for (unsigned d = 0; d < budget && n > 0; ++d) mono *= Poly::var(unsigned(rng.below(n)));
      p += mono * rng.rat(3, 2);
    }
    comps.push_back(std::move(p));
  }
  return PolyFunc(n, std::move(comps));
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  CliResult r;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  g_cli = argv[1];

  run_criterion(1, "ring laws", [](std::string& detail) {
    return suite_ok("rings", 200, 1001, detail);
  });

  run_criterion(2, "forward-differentiation oracle equivalence", [](std::string& detail) {
    Rng rng(1002);
    for (int ci = 0; ci < 100; ++ci) {
      unsigned n = 1 + unsigned(rng.below(3)), m = 1 + unsigned(rng.below(3));
      int k = 1 + int(rng.below(4));
      PolyFunc f = random_polyfunc(rng, n, m, 4);
      TkPoint u(k, n);
      for (Mask g = 0; g < Mask(u.comps.size()); ++g) u.comps[g] = rng.rat_vec(n, 3, 2);
      if (!(tk_extend(f, u) == tk_map_formula(f, u))) {
        detail = "tangent-map formula mismatch at case " + std::to_string(ci);
        return false;
      }
      std::vector<Rat> x = rng.rat_vec(n, 3, 2);
      std::vector<std::vector<Rat>> jets;
      for (int j = 0; j < k; ++j) jets.push_back(rng.rat_vec(n, 3, 2));
      TkPoint big = tk_map_formula(f, jet_point(k, x, jets));
      auto w = jk_map_formula(f, x, jets);
      for (int j = 1; j <= k; ++j)
        if (!(w[j - 1] == big.comps[(Mask(1) << j) - 1])) {
          detail = "jet formula mismatch at case " + std::to_string(ci);
          return false;
        }
    }
    return true;
  });

  run_criterion(3, "chain rule and composition formula", [](std::string& detail) {
    Rng rng(1003);
    for (int ci = 0; ci < 50; ++ci) {
      unsigned n = 1 + unsigned(rng.below(3)), m = 1 + unsigned(rng.below(3)),
               p = 1 + unsigned(rng.below(3));
      int k = 1 + int(rng.below(4));
      PolyFunc f = random_polyfunc(rng, n, m, 3);
      PolyFunc g = random_polyfunc(rng, m, p, 3);
      TkPoint u(k, n);
      for (Mask gg = 0; gg < Mask(u.comps.size()); ++gg) u.comps[gg] = rng.rat_vec(n, 2, 2);
      if (!(tk_extend(compose(g, f), u) == tk_extend(g, tk_extend(f, u)))) {
        detail = "chain rule at case " + std::to_string(ci);
        return false;
      }
      unsigned j = 1 + unsigned(rng.below(4));
      std::vector<Rat> x = rng.rat_vec(n, 2, 2), v = rng.rat_vec(n, 2, 2);
      std::vector<Rat> lhs = faa_di_bruno(g, f, x, j, v);
      std::vector<Rat> rhs = higher_diff(compose(g, f), x, std::vector<std::vector<Rat>>(j, v));
      if (!(lhs == rhs)) {
        detail = "composition formula at case " + std::to_string(ci);
        return false;
      }
    }
    return true;
  });

  run_criterion(4, "multilinear group", [](std::string& detail) {
    return suite_ok("multilinear", 100, 1004, detail);
  });

  run_criterion(5, "polynomial group exponentials", [](std::string& detail) {
    return suite_ok("polygroup", 60, 1005, detail);
  });

  run_criterion(6, "higher tangent groups vs matrix arithmetic", [](std::string& detail) {
    return suite_ok("liegroups", 100, 1006, detail);
  });

  run_criterion(7, "connection calculus identities", [](std::string& detail) {
    return suite_ok("connections", 20, 1007, detail);
  });

  run_criterion(8, "section groups and flows", [](std::string& detail) {
    Rng rng(1008);
    for (int ci = 0; ci < 12; ++ci) {
      unsigned n = 1 + unsigned(rng.below(3));
      int k = 2 + int(rng.below(3));  // 2..4
      auto field = [&](unsigned deg) { return random_polyfunc(rng, n, n, deg); };
      SectionGroup sg{k, n};
      // group law associativity and inversion for full sections
      if (k <= 3) {
        SectionK X(k, n), Y(k, n), Z(k, n);
        for (Mask g = 1; g < Mask(X.comps.size()); ++g) {
          X.comps[g] = field(2);
          Y.comps[g] = field(2);
          Z.comps[g] = field(2);
        }
        if (!(section_mul(section_mul(X, Y), Z) == section_mul(X, section_mul(Y, Z)))) {
          detail = "associativity at case " + std::to_string(ci);
          return false;
        }
        if (!(section_mul(X, section_inv(X)) == SectionK(k, n))) {
          detail = "inversion at case " + std::to_string(ci);
          return false;
        }
      }
      // commutator of disjoint vectorial sections
      VectorField A = field(2), B = field(2);
      {
        SectionK a = SectionK::axis(k, 1, A), b = SectionK::axis(k, 2, B);
        SectionK comm =
            section_mul(section_mul(a, b), section_mul(section_inv(a), section_inv(b)));
        if (!(comm == SectionK::axis(k, 3, vf_bracket(A, B)))) {
          detail = "commutator at case " + std::to_string(ci);
          return false;
        }
      }
      // exponential: closed form vs the group engine, and symmetry
      SectionK e = vf_exp_jet(A, k);
      if (!(e == group_exp(sg, SectionK::diagonal(k, A))) || !is_symmetric(e)) {
        detail = "exponential mismatch at case " + std::to_string(ci);
        return false;
      }
      // strictly triangular linear field: components are the matrix powers
      {
        Matrix<Rat> mat(n, n);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j2 = i + 1; j2 < n; ++j2) mat.at(i, j2) = rng.rat(2, 1);
        std::vector<Poly> lin(n);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned l = 0; l < n; ++l) lin[i] += Poly::var(l) * mat.at(i, l);
        VectorField Af(n, lin);
        SectionK flow = vf_exp_jet(Af, k);
        Matrix<Rat> pw = Matrix<Rat>::identity(n);
        for (int j2 = 1; j2 <= k; ++j2) {
          pw = pw * mat;
          std::vector<Poly> expect(n);
          for (unsigned i = 0; i < n; ++i)
            for (unsigned l = 0; l < n; ++l) expect[i] += Poly::var(l) * pw.at(i, l);
          if (!(flow.comps[(Mask(1) << j2) - 1] == PolyFunc(n, expect))) {
            detail = "flow jet at case " + std::to_string(ci);
            return false;
          }
        }
      }
      // integer powers through the group
      SectionK twice = vf_exp_jet(VectorField(A * Rat(2)), k);
      if (!(twice == section_mul(e, e))) {
        detail = "exponential power at case " + std::to_string(ci);
        return false;
      }
    }
    return true;
  });

  run_criterion(9, "command line contract", [](std::string& detail) {
    CliResult taylor = run_cli("taylor --order 3 --at 1 --dir 1 \"x^2\"");
    if (taylor.exit_code != 0 ||
        taylor.out != "{\"coefficients\": [1, 2, 1, 0], \"jet_components\": [1, 2, 2, 0]}\n") {
      detail = "taylor output: " + taylor.out;
      return false;
    }
    CliResult tkeval = run_cli("tk-eval --order 2 --point \"1 + e1 + e2\" \"x^2\"");
    if (tkeval.exit_code != 0 ||
        tkeval.out != "{\"\": 1, \"1\": 2, \"2\": 2, \"12\": 2}\n") {
      detail = "tk-eval output: " + tkeval.out;
      return false;
    }
    CliResult ver = run_cli("verify --suite rings --cases 50 --seed 7");
    if (ver.exit_code != 0 ||
        ver.out != "{\"suite\": \"rings\", \"cases\": 50, \"failures\": []}\n") {
      detail = "verify output: " + ver.out + " exit " + std::to_string(ver.exit_code);
      return false;
    }
    // determinism: identical invocations give identical bytes
    CliResult ver2 = run_cli("verify --suite rings --cases 50 --seed 7");
    if (ver2.out != ver.out) {
      detail = "verify output not deterministic";
      return false;
    }
    // the environment variable provides the default seed
    CliResult ver3 = run_cli("verify --suite rings --cases 50");
    CliResult ver4 = run_cli("verify --suite rings --cases 50 --seed 0");
    if (!(ver3.exit_code == 0 && ver3.out == ver4.out)) {
      detail = "default seed mismatch";
      return false;
    }
    {
      std::string saved = g_cli;
      g_cli = "JETCALC_SEED=7 " + saved;
      CliResult enved = run_cli("verify --suite rings --cases 50");
      g_cli = saved;
      if (enved.out != ver.out) {
        detail = "environment seed not honored";
        return false;
      }
    }
    // full run is green
    CliResult all = run_cli("verify --suite all --cases 25 --seed 5");
    if (all.exit_code != 0) {
      detail = "verify all exited " + std::to_string(all.exit_code) + ": " + all.out;
      return false;
    }
    // planted single-formula defects must be caught
    for (const char* m : {"tk-mul-overlap", "partition-drop", "curvature-sign",
                          "leftprod-nesting", "ch-coeff"}) {
      CliResult bad = run_cli(std::string("verify --suite all --cases 25 --seed 5 --mutate ") + m);
      if (bad.exit_code != 1) {
        detail = std::string("mutation ") + m + " exited " + std::to_string(bad.exit_code);
        return false;
      }
    }
    // usage errors exit with code two
    CliResult usage = run_cli("verify --suite nonsense");
    if (usage.exit_code != 2) {
      detail = "usage error exited " + std::to_string(usage.exit_code);
      return false;
    }
    return true;
  });

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
