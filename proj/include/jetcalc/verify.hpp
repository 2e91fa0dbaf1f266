#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetcalc {

struct Failure {
  int case_index;
  std::string name;
  std::string detail;
};

struct Report {
  std::string suite;
  int cases = 0;
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};

// rings, jets, multilinear, polygroup, liegroups, connections, all
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);

// Deterministic: identical (name, cases, seed) gives identical reports.
Report run_suite(const std::string& name, int cases, std::uint64_t seed);

}  // namespace jetcalc
