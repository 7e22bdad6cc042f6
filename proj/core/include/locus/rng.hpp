#pragma once

#include <cstdint>
#include <random>

namespace locus {

/// std::mt19937_64 seeded from a 64-bit seed. Sub-streams are derived with
/// SplitMix64 so independent consumers (coordinates, demands, particles,
/// replications) never share draws.
using Rng = std::mt19937_64;

/// One SplitMix64 output for `state`; advances nothing.
std::uint64_t splitMix64(std::uint64_t state) noexcept;

/// Seed of sub-stream `index` under `master`.
std::uint64_t streamSeed(std::uint64_t master, std::uint64_t index) noexcept;

Rng makeRng(std::uint64_t master, std::uint64_t stream);

/// Uniform on [0,1) with 53 random bits; fixed across standard libraries,
/// unlike std::uniform_real_distribution.
double uniform01(Rng& rng) noexcept;

inline double uniform(Rng& rng, double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(rng); }

} // namespace locus
