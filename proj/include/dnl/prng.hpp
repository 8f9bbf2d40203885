/**
 * @file prng.hpp
 * @brief Portable, seedable random number generation.
 *
 * All randomness in the library flows through Xoshiro256++ seeded via
 * SplitMix64. Both algorithms are fully specified by their constants, so
 * streams are reproducible across platforms and languages, unlike the
 * distributions in <random> whose output is implementation-defined.
 *
 * References:
 *   SplitMix64:   Steele, Lea, Flood (2014), java.util.SplittableRandom.
 *   Xoshiro256++: Blackman & Vigna (2019), https://prng.di.unimi.it/
 */

#ifndef DNL_PRNG_HPP
#define DNL_PRNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dnl {

/// SplitMix64 stream, used to expand a 64-bit seed into generator state.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// Xoshiro256++ generator. Main PRNG for instance generation and search.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto &word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Requires n > 0.
  int uniform_int(int n) {
    // Bounded rejection sampling keeps the draw unbiased.
    const auto bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t raw;
    do {
      raw = next_u64();
    } while (raw >= limit);
    return static_cast<int>(raw % bound);
  }

  /// Standard normal deviate via Box-Muller (cosine branch only).
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T> &items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      const int j = uniform_int(i + 1);
      std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace dnl

#endif  // DNL_PRNG_HPP
