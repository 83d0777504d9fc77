#pragma once

#include <cmath>
#include <cstdint>

namespace arco {

/// Counter-based pseudo-random generator built on the splitmix64 finalizer.
/// The i-th output word is a pure function of (seed, i), so instances are
/// reproducible bit-for-bit from the seed alone, independent of any platform
/// library's random stream. Normal variates use the Box-Muller transform on
/// two consecutive uniforms (the sine branch is discarded to keep counter
/// bookkeeping trivial).
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// Uniform on [0, 1) from the 53 high bits of word `counter`.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(splitmix64_at(seed_, counter) >> 11) * 0x1.0p-53;
  }

  /// Standard normal consuming counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Sequential view over CounterRng for generation loops with a fixed order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(next_++); }

  double normal() {
    double u1 = rng_.uniform(next_++);
    double u2 = rng_.uniform(next_++);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace arco
