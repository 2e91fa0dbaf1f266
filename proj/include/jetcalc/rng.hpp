#pragma once

#include <cstdint>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

// Deterministic splitmix64. The verify suites promise byte-identical output
// for identical seeds, so no std:: engine (their streams are unspecified).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  long int_in(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  Rat rat(long max_num = 4, long max_den = 3) {
    long num = int_in(-max_num, max_num);
    long den = int_in(1, max_den);
    return Rat(num, den);
  }

  std::vector<Rat> rat_vec(std::size_t n, long max_num = 4, long max_den = 3) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = rat(max_num, max_den);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace jetcalc
