#pragma once

#include <cstdint>
#include <vector>

#include "locus/generator.hpp"
#include "locus/instance.hpp"
#include "locus/rng.hpp"

namespace locus::testing {

/// Hand-built instance with zero distances; weights and service given directly.
/// Demands are normalized.
inline Instance makeInstance(std::vector<double> demand, const std::vector<std::vector<double>>& stationService,
                             const std::vector<std::vector<double>>& stationWeight,
                             const std::vector<std::vector<double>>& lockerService,
                             const std::vector<std::vector<double>>& lockerWeight, int budget,
                             CardinalityMode mode = CardinalityMode::AtMost) {
  Instance in;
  const std::size_t nI = demand.size();
  const std::size_t nK = stationService.empty() ? 0 : stationService.front().size();
  const std::size_t nJ = lockerService.empty() ? 0 : lockerService.front().size();
  for (std::size_t i = 0; i < nI; ++i) in.zoneIds.push_back("z" + std::to_string(i));
  for (std::size_t k = 0; k < nK; ++k) in.stationIds.push_back("s" + std::to_string(k));
  for (std::size_t j = 0; j < nJ; ++j) in.lockerIds.push_back("l" + std::to_string(j));
  in.demand = std::move(demand);
  in.stationDist = Matrix(nI, nK, 0.0);
  in.lockerDist = Matrix(nI, nJ, 0.0);
  in.stationService = nK ? Matrix::fromRows(stationService) : Matrix(nI, 0);
  in.stationWeight = nK ? Matrix::fromRows(stationWeight) : Matrix(nI, 0);
  in.lockerService = nJ ? Matrix::fromRows(lockerService) : Matrix(nI, 0);
  in.lockerWeight = nJ ? Matrix::fromRows(lockerWeight) : Matrix(nI, 0);
  in.budget = budget;
  in.mode = mode;
  normalizeDemand(in);
  requireValid(in);
  return in;
}

struct SmallRanges {
  std::size_t zonesLo = 2, zonesHi = 8;
  std::size_t facLo = 2, facHi = 6;
  int budgetHi = 3;
};

inline std::size_t drawIndex(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

/// Random generated instance with sizes drawn from `r`. P is capped so that
/// at least one station stays open and EXACT mode is feasible.
inline Instance randomSmall(std::uint64_t seed, CardinalityMode mode, const SmallRanges& r = {}) {
  Rng rng = makeRng(seed, 99);
  GenSpec spec;
  spec.zones = drawIndex(rng, r.zonesLo, r.zonesHi);
  spec.stations = drawIndex(rng, r.facLo, r.facHi);
  spec.lockers = drawIndex(rng, r.facLo, r.facHi);
  const int cap = std::min<int>({r.budgetHi, static_cast<int>(spec.stations) - 1, static_cast<int>(spec.lockers)});
  spec.budget = static_cast<int>(drawIndex(rng, 0, static_cast<std::size_t>(cap)));
  const double alphas[] = {0.5, 1.0, 2.0};
  const double boxes[] = {300.0, 500.0, 1000.0};
  spec.alpha = alphas[drawIndex(rng, 0, 2)];
  spec.boxSide = boxes[drawIndex(rng, 0, 2)];
  spec.mode = mode;
  spec.seed = seed;
  return generate(spec);
}

/// Instances for property tests: alternating modes.
inline Instance randomSmall(std::uint64_t seed) {
  return randomSmall(seed, seed % 2 ? CardinalityMode::Exact : CardinalityMode::AtMost);
}

} // namespace locus::testing
