#ifndef KQUANT_RNG_HPP_
#define KQUANT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace kq {

// Deterministic, portable random number generation. The exact algorithms are
// part of the data contract: fixtures and golden files assume them.
//
//   * splitmix64_mix: the SplitMix64 output finalizer (Steele et al.).
//   * Xoshiro256pp:   xoshiro256++ by Blackman & Vigna, state seeded from a
//                     SplitMix64 chain.
//   * substream k of seed s is seeded with splitmix64_mix(splitmix64_mix(s) + k).
//   * uniform01:      take the top 53 bits, scale by 2^-53 -> [0, 1).
//   * normals:        Box-Muller pairs (cosine branch first, then sine);
//                     u1 is mapped to (0, 1] so log stays finite.

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  /// Independent stream for (seed, stream_index) pairs.
  static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream_index) {
    return Xoshiro256pp(splitmix64_mix(splitmix64_mix(seed) + stream_index));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate; every pair of draws consumes two uniforms.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace kq

#endif  // KQUANT_RNG_HPP_
