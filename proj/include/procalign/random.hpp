#pragma once

#include <cstdint>
#include <random>

namespace procalign {

/// std::mt19937_64 has a fully specified output sequence; the helpers below
/// avoid the implementation-defined std distributions so seeded runs are
/// reproducible across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling. n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n)
{
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Independent stream for item `index` of a seeded computation.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

}  // namespace procalign
