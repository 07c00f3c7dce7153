#pragma once

#include <cstdint>

namespace ffdioph {

/// Counter-based deterministic generator (splitmix64 over seed, counter).
/// Identical streams on every platform; streams are freely partitionable by
/// counter ranges, so randomized suites can be split across workers.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : seed_(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1))), counter_(0) {}

  uint64_t next() { return mix(seed_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  /// Uniform in [0, n), n > 0 (desk-scale n; modulo bias negligible and,
  /// more to the point, irrelevant for reproducible test sampling).
  uint64_t next_below(uint64_t n) { return next() % n; }

  long next_in_range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next_below(static_cast<uint64_t>(hi - lo + 1)));
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  uint64_t seed_;
  uint64_t counter_;
};

}  // namespace ffdioph
