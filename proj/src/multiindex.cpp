#include "jetcalc/multiindex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "jetcalc/mutation.hpp"

namespace jetcalc {

void check_order(int k) {
  if (k < 1 || k > kMaxOrder) throw std::domain_error("order k out of range [1,16]");
}

Partition::Partition(std::vector<Mask> p) : parts(std::move(p)) {
  Mask seen = 0;
  Mask prev = 0;
  for (Mask part : parts) {
    if (part == 0) throw std::invalid_argument("partition with empty part");
    if (!disjoint(part, seen)) throw std::invalid_argument("partition parts overlap");
    if (part <= prev) throw std::invalid_argument("partition parts not increasing");
    seen |= part;
    prev = part;
  }
}

namespace {

// Recursive enumeration: the lowest remaining bit is placed in one part
// together with any subset of the other remaining bits.
void enum_rec(Mask rest, std::vector<Mask>& acc, std::vector<std::vector<Mask>>& out) {
  if (rest == 0) {
    out.push_back(acc);
    return;
  }
  Mask low = rest & (~rest + 1);
  Mask others = rest ^ low;
  // iterate over all subsets s of others; part = low | s
  Mask s = others;
  std::vector<Mask> subs;
  for (;;) {
    subs.push_back(s);
    if (s == 0) break;
    s = (s - 1) & others;
  }
  std::sort(subs.begin(), subs.end());
  for (Mask sub : subs) {
    acc.push_back(low | sub);
    enum_rec(others ^ sub, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(Mask alpha, int len) {
  if (alpha == 0) throw std::invalid_argument("empty target");
  if (len > weight(alpha)) return {};
  std::vector<std::vector<Mask>> raw;
  std::vector<Mask> acc;
  enum_rec(alpha, acc, raw);
  std::vector<Partition> out;
  out.reserve(raw.size());
  for (auto& parts : raw) {
    if (len > 0 && static_cast<int>(parts.size()) != len) continue;
    std::sort(parts.begin(), parts.end());
    out.push_back(Partition(std::move(parts)));
  }
  std::sort(out.begin(), out.end());
  if (active_mutation() == Mutation::partition_drop && weight(alpha) >= 2) {
    // planted defect: lose the coarsest partition {alpha}
    std::erase_if(out, [&](const Partition& p) { return p.length() == 1; });
  }
  return out;
}

RefinementResult refinement(const Partition& omega, const Partition& lambda) {
  if (omega.target() != lambda.target())
    throw std::invalid_argument("refinement: partitions of different targets");
  RefinementResult r;
  for (Mask l : lambda.parts) {
    bool contained = false;
    for (Mask o : omega.parts)
      if (subset(l, o)) { contained = true; break; }
    if (!contained) return r;  // incomparable
  }
  r.comparable = true;
  for (Mask o : omega.parts) {
    std::vector<Mask> inside;
    for (Mask l : lambda.parts)
      if (subset(l, o)) inside.push_back(l);
    r.induced.push_back(Partition(std::move(inside)));
  }
  return r;
}

Integer decomposition_count(unsigned j, const std::vector<unsigned>& sizes) {
  unsigned total = 0;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
    if (sizes[i] > sizes[i + 1]) throw std::invalid_argument("sizes not nondecreasing");
  for (unsigned s : sizes) {
    if (s == 0) throw std::invalid_argument("zero block size");
    total += s;
  }
  if (total != j || j == 0) throw std::invalid_argument("sizes do not sum to j");
  Integer r = factorial(j);
  std::map<unsigned, unsigned> mult;
  for (unsigned s : sizes) {
    r /= factorial(s);
    ++mult[s];
  }
  for (auto& [sz, m] : mult) r /= factorial(m);
  return r;
}

Perm perm_identity(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& s, const Perm& t) {
  Perm r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[t[i]];
  return r;
}

Perm perm_inverse(const Perm& s) {
  Perm r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[s[i]] = static_cast<int>(i);
  return r;
}

Perm transposition(int k, int i, int j) {
  Perm p = perm_identity(k);
  std::swap(p[i], p[j]);
  return p;
}

Perm cycle_shift(int k) {
  Perm p(k);
  for (int i = 0; i < k; ++i) p[i] = (i + 1) % k;
  return p;
}

std::vector<Perm> all_permutations(int k) {
  Perm p = perm_identity(k);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Mask apply_perm(const Perm& s, Mask a) {
  Mask r = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (a & (Mask(1) << i)) r |= Mask(1) << s[i];
  return r;
}

Partition apply_perm(const Perm& s, const Partition& p) {
  std::vector<Mask> parts;
  parts.reserve(p.parts.size());
  for (Mask m : p.parts) parts.push_back(apply_perm(s, m));
  std::sort(parts.begin(), parts.end());
  return Partition(std::move(parts));
}

}  // namespace jetcalc
