#pragma once

#include <cstdint>

namespace qkron {

// splitmix64 finalizer (Steele/Lea/Flood). Used in two ways:
//  * as a stateless counter-based generator: sample k of stream s is
//    mix(seed ^ GOLDEN*s ^ mix(k)), reproducible on any platform;
//  * as a tiny sequential PRNG for bulk draws.
// No std:: distributions anywhere; doubles come from the top 53 bits, so
// identical seeds give bit-identical streams across compilers.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix64(seed ^ (kGolden * (stream + 1)))) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return unit_double(next_u64()); }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Counter-based draw: sample `counter` of stream `stream` under `seed`.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
  return unit_double(mix64(seed ^ (kGolden * (stream + 1)) ^ mix64(counter)));
}

}  // namespace qkron
