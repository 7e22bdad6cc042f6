#include "locus/rng.hpp"

namespace locus {

std::uint64_t splitMix64(std::uint64_t state) noexcept {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t streamSeed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitMix64(splitMix64(master) ^ (index * 0xD1B54A32D192ED03ULL));
}

Rng makeRng(std::uint64_t master, std::uint64_t stream) { return Rng(streamSeed(master, stream)); }

double uniform01(Rng& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace locus
