// Deterministic random streams for reproducible simulation.
//
// std::uniform_real_distribution is not bit-reproducible across standard
// library implementations, so all randomness goes through SplitMix64 and a
// fixed 53-bit double conversion. Every consumer (Alice, Bob, Eve, trial
// loops) owns its own stream, seeded by derive_seed, so adding a consumer
// or reordering evaluation never perturbs another stream's draws.

#pragma once

#include <cstdint>
#include <initializer_list>

namespace qsdc {

/// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Folds a list of words into one seed. Order-sensitive, so
/// derive_seed({a, b}) != derive_seed({b, a}).
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t acc = 0xA0761D6478BD642Full;
  for (std::uint64_t w : words) {
    acc = mix64(acc + 0x9E3779B97F4A7C15ull + w);
  }
  return acc;
}

/// Counter-based SplitMix64 stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits. Consumes one word.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform bit. Consumes one word.
  int next_bit() { return static_cast<int>(next_u64() & 1u); }

  /// Uniform integer in [0, n), n >= 1. One word when n is a power of two,
  /// otherwise unbiased rejection sampling (may consume several).
  std::uint64_t next_below(std::uint64_t n) {
    if ((n & (n - 1)) == 0) {
      return next_u64() & (n - 1);
    }
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::uint64_t state_;
};

// Stream tags for derive_seed. Distinct constants per consumer role.
namespace stream_tag {
inline constexpr std::uint64_t alice = 0xA11CEull;
inline constexpr std::uint64_t bob = 0xB0Bull;
inline constexpr std::uint64_t eve = 0xEFEull;
inline constexpr std::uint64_t bob_message = 0xB175ull;
inline constexpr std::uint64_t trial = 0x7514ull;
inline constexpr std::uint64_t toeplitz = 0x70E9ull;
}  // namespace stream_tag

}  // namespace qsdc
