#pragma once

#include <array>
#include <cstdint>

namespace racgap {

// Finaliser of the splitmix64 generator; a bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  return mix64(state += 0x9E3779B97F4A7C15ULL);
}

// Seed for replicate `index` of a study with seed `base_seed`:
// the (index+1)-th output of a splitmix64 stream seeded at base_seed.
// mix64 is a bijection and the pre-mix words are distinct for distinct
// indices, so derived seeds are pairwise distinct for any fixed base.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// xoshiro256** with splitmix64 seeding. Deterministic across platforms,
// unlike the standard-library distributions, which is what the
// reproducibility contract of the simulation harness needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 0x9E3779B97F4A7C15ULL;
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  std::uint8_t bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

  // Uniform in [0, n); rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace racgap
