#pragma once

#include <cstdint>
#include <initializer_list>

namespace nksearch {

// splitmix64 finalizer step: advances the state by the golden-gamma
// increment and returns a mixed output word.
inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based random stream. Small enough to construct per agent per
// step; all randomness in the project flows through this type so runs
// are reproducible across platforms and thread counts.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t operator()() { return splitmix64_step(state_); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ull; }

 private:
  std::uint64_t state_;
};

// Stream derivation: folds `word` into `seed` with one finalizer round.
// derive(seed, a, b, c) chains left to right, so distinct word tuples give
// independent streams. This is the documented seed mixing used everywhere
// (per repetition, per agent, per step, per restart).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) {
  std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ull * (word + 0x9E3779B97F4A7C15ull));
  return splitmix64_step(s);
}

template <typename... Words>
std::uint64_t derive(std::uint64_t seed, Words... words) {
  ((seed = mix_seed(seed, static_cast<std::uint64_t>(words))), ...);
  return seed;
}

// Unbiased integer in [0, n). Rejects the low remainder region of the
// 64-bit range, so every value is exactly equally likely.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool coin_flip(Rng& rng) { return (rng() & 1ull) != 0; }

}  // namespace nksearch
