#pragma once

#include <cstdint>

namespace irsdeploy {

/// Deterministic splittable generator (splitmix64). Used where tests and the
/// channel oracle need reproducible draws independent of the standard
/// library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Independent stream derived from this one.
  SplitMix64 split() { return SplitMix64(next_u64() ^ 0xA5A5A5A55A5A5A5Aull); }

 private:
  std::uint64_t state_;
};

}  // namespace irsdeploy
