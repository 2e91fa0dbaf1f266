#include "jetcalc/mutation.hpp"

namespace jetcalc {

namespace {
Mutation g_mutation = Mutation::none;
}

Mutation active_mutation() { return g_mutation; }
void set_mutation(Mutation m) { g_mutation = m; }

bool set_mutation_by_name(const std::string& name) {
  if (name.empty() || name == "none") { g_mutation = Mutation::none; return true; }
  if (name == "tk-mul-overlap") { g_mutation = Mutation::tk_mul_overlap; return true; }
  if (name == "jet-binomial") { g_mutation = Mutation::jet_binomial; return true; }
  if (name == "partition-drop") { g_mutation = Mutation::partition_drop; return true; }
  if (name == "curvature-sign") { g_mutation = Mutation::curvature_sign; return true; }
  if (name == "leftprod-nesting") { g_mutation = Mutation::leftprod_nesting; return true; }
  if (name == "ch-coeff") { g_mutation = Mutation::ch_coeff; return true; }
  return false;
}

std::vector<std::string> mutation_names() {
  return {"tk-mul-overlap", "jet-binomial",     "partition-drop",
          "curvature-sign", "leftprod-nesting", "ch-coeff"};
}

}  // namespace jetcalc
