// Seedable, splittable random source shared by the ledger and the engine.

#ifndef TOKENLAB_RNG_HPP
#define TOKENLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace tokenlab {

using Rng = std::mt19937_64;

/// Independent stream number `index` derived from a master seed.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x746f6b6eU};
  return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Always consumes exactly one draw. p <= 0 never fires, p >= 1 always does.
inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

}  // namespace tokenlab

#endif  // TOKENLAB_RNG_HPP
