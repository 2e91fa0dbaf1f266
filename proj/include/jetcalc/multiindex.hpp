#pragma once

#include <cstdint>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

// A multi-index is a bitmask over the infinitesimal units: bit i-1 set means
// unit i is present. The integer order of masks (unit 1 = least significant
// bit) is the canonical total order used everywhere.
using Mask = std::uint32_t;

constexpr int kMaxOrder = 16;  // 2^k coefficient storage dominates beyond this

inline int weight(Mask a) { return __builtin_popcount(a); }
inline bool disjoint(Mask a, Mask b) { return (a & b) == 0; }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

void check_order(int k);  // throws unless 1 <= k <= kMaxOrder

// Ordered partition of a nonzero multi-index: pairwise disjoint nonzero
// parts, strictly increasing in mask order, summing to the target.
struct Partition {
  std::vector<Mask> parts;

  Partition() = default;
  explicit Partition(std::vector<Mask> p);  // validates and keeps order

  Mask target() const {
    Mask t = 0;
    for (Mask p : parts) t |= p;
    return t;
  }
  std::size_t length() const { return parts.size(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

// All partitions of alpha (of the given length when len > 0), each with parts
// ascending, the list sorted lexicographically by part sequence.
std::vector<Partition> enumerate_partitions(Mask alpha, int len = 0);

struct RefinementResult {
  bool comparable = false;              // omega is coarser-or-equal than lambda
  std::vector<Partition> induced;       // lambda restricted to each part of omega
};

// Tests omega <= lambda in the refinement order (every part of lambda inside
// some part of omega) and returns the induced partitions of omega's parts.
RefinementResult refinement(const Partition& omega, const Partition& lambda);

// Number of ways to split a j-element set into an unordered family of
// disjoint subsets with the given sizes (sizes nondecreasing, summing to j).
Integer decomposition_count(unsigned j, const std::vector<unsigned>& sizes);

// Permutations of {1..k}, stored 0-based: perm[i] = image of i.
using Perm = std::vector<int>;

Perm perm_identity(int k);
Perm perm_compose(const Perm& s, const Perm& t);  // s after t
Perm perm_inverse(const Perm& s);
Perm transposition(int k, int i, int j);          // 0-based positions
Perm cycle_shift(int k);                          // i -> i+1 mod k
std::vector<Perm> all_permutations(int k);
Mask apply_perm(const Perm& s, Mask a);
Partition apply_perm(const Perm& s, const Partition& p);  // parts re-sorted

}  // namespace jetcalc
