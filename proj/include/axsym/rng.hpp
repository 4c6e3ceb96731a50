#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace axsym {

// splitmix64 finalizer. Used both as a seed scrambler and to derive
// independent streams: derived = mix64(base ^ mix64(salt)).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t derive_stream(std::uint64_t base, std::uint64_t salt) {
  return mix64(base ^ mix64(salt));
}

// Seed for replication `rep` of a study with base seed `base`.
// rep+1 keeps replication 0 distinct from the raw base stream.
inline constexpr std::uint64_t replication_seed(std::uint64_t base, std::uint64_t rep) {
  return mix64(base ^ mix64(rep + 1));
}

// xoshiro256++ with splitmix64 state expansion. Deterministic across
// platforms: no libc rand, no std::random_device, no distribution objects.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : initial_seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9E3779B97F4A7C15ULL;
      word = mix64(s);
    }
  }

  std::uint64_t initial_seed() const { return initial_seed_; }

  std::uint64_t next() {
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

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n). Rejection keeps the distribution exact.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal, Box-Muller cosine branch: two uniforms per draw.
  // 1 - u1 > 0 always, so the log argument never vanishes.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
  std::uint64_t initial_seed_;
};

}  // namespace axsym
