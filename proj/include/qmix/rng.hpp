// Deterministic random streams. Every stochastic routine takes an explicit
// seed; per-item streams are derived by hashing (seed, ids...) so output
// is independent of evaluation order and worker count.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace qmix {

// splitmix64 step; also the stream-derivation mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> ids) {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix64(s);
  for (std::uint64_t id : ids) {
    s ^= id + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
    out = splitmix64(s);
  }
  return out;
}

// Small xoshiro-free generator: splitmix64 driven, with bit-exact uniform
// mapping (never uses std::uniform_real_distribution, whose output is
// implementation-defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1): 53 mantissa bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    return next_u64() % n;  // modulo bias negligible for desk-scale n
  }

  // Standard normal via Box-Muller (used for Haar-style sampling).
  double normal();

 private:
  std::uint64_t state_;
};

inline double RngStream::normal() {
  // Box-Muller; discards the second output for simplicity.
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace qmix
