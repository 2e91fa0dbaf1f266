#pragma once

#include <string>
#include <vector>

namespace jetcalc {

// Test-only fault injection. The verify suites must detect a defect in any
// single formula; these switches plant one deliberately so that sensitivity
// can be demonstrated end to end. Never set in normal operation.
enum class Mutation {
  none,
  tk_mul_overlap,    // ring product keeps non-disjoint index pairs
  jet_binomial,      // jet product drops the binomial coefficient
  partition_drop,    // partition enumeration loses the coarsest partition
  curvature_sign,    // curvature tensor: one derivative term flipped
  leftprod_nesting,  // left product formula: bracket nesting reversed
  ch_coeff,          // exponential: 1/p! replaced by 1/p
};

Mutation active_mutation();
void set_mutation(Mutation m);

// Returns false if the name is unknown. "" or "none" clears.
bool set_mutation_by_name(const std::string& name);
std::vector<std::string> mutation_names();

}  // namespace jetcalc
