#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "locus/instance.hpp"

namespace locus {

inline constexpr std::uint64_t kOracleCap = 10'000'000;

struct OracleResult {
  Solution best;
  double value = 0.0;
  std::uint64_t count = 0;  ///< feasible points visited
};

/// Number of points satisfying the budget rows; saturates at UINT64_MAX.
std::uint64_t feasibleCount(const Instance& instance);

/// Calls `visit` for every budget-feasible configuration. Lockers vary in
/// the outer loop. Throws TooLarge when feasibleCount exceeds `cap`.
void forEachFeasible(const Instance& instance, const std::function<void(const Solution&)>& visit,
                     std::uint64_t cap = kOracleCap);

/// Exhaustive maximum of the service level; ties go to the lexicographically
/// smallest (lockers, stations).
OracleResult enumerateOptimal(const Instance& instance, std::uint64_t cap = kOracleCap);

struct ZCondition {
  enum class On { None, Locker, Station };
  On on = On::None;
  std::size_t index = 0;
  bool value = false;

  static ZCondition none() { return {}; }
  static ZCondition locker(std::size_t j, bool open) { return {On::Locker, j, open}; }
  static ZCondition station(std::size_t k, bool kept) { return {On::Station, k, kept}; }
};

struct ZRange {
  double min = 0.0;
  double max = 0.0;
};

/// Extremes of 1/(open weight) per zone over feasible points meeting the
/// condition. Throws EmptyFeasibleSet when no such point opens anything.
std::vector<ZRange> enumerateZRange(const Instance& instance, const ZCondition& condition,
                                    std::uint64_t cap = kOracleCap);

} // namespace locus
