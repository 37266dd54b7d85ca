#pragma once

#include <cstdint>
#include <vector>

#include "conc/error.hpp"
#include "conc/space.hpp"

namespace conc {

// 64-bit finalizer (splitmix64).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based random stream: the key names the stream, the counter its
/// position. split() derives an independent child stream, so parallel
/// consumers indexed by task id never share state and results do not depend
/// on scheduling order.
class RngStream {
 public:
  static RngStream seeded(std::uint64_t seed) {
    return RngStream(mix64(seed ^ 0x1F83D9ABFB41BD6Bull), 0);
  }

  RngStream split(std::uint64_t index) const {
    return RngStream(mix64(key_ ^ mix64(index + 0x9E3779B97F4A7C15ull)), 0);
  }

  std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0, 1)
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    require(lo <= hi, Err::InvalidParameter, "empty integer range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
    const auto wide = static_cast<unsigned __int128>(next_u64()) * range;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  int pick_atom(const FiniteSpace& factor) {
    const double u = uniform01();
    double cum = 0.0;
    for (int a = 0; a + 1 < factor.atom_count(); ++a) {
      cum += factor.weight(a);
      if (u < cum) return a;
    }
    return factor.atom_count() - 1;
  }

  // `count` distinct values from {lo,...,hi}, sorted ascending.
  std::vector<int> sample_distinct(int count, int lo, int hi) {
    require(count >= 0 && count <= hi - lo + 1, Err::InvalidParameter,
            "cannot sample that many distinct values");
    std::vector<int> out;
    while (static_cast<int>(out.size()) < count) {
      const int v = static_cast<int>(uniform_int(lo, hi));
      bool seen = false;
      for (int u : out) seen = seen || (u == v);
      if (!seen) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  RngStream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace conc
