#pragma once

#include <cstdint>
#include <random>

namespace xfrag {

// Portable deterministic draws: the standard distributions are not specified
// bit-for-bit across library implementations, so integers are derived
// directly from the 64-bit engine by rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform over [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return lo + next();
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + x % n;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }

  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(1, den) <= num; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace xfrag
