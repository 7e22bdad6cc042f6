#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "locus/matrix.hpp"

namespace locus {

/// How the two budget rows (open lockers, closed stations) are enforced.
enum class CardinalityMode { AtMost, Exact };

const char* toString(CardinalityMode mode) noexcept;
CardinalityMode cardinalityModeFromString(const std::string& text);

/// A locker-siting problem: customer zones, existing stations, candidate
/// lockers, and the MNL data linking them. Matrices are zone-major
/// (rows = zones).
struct Instance {
  std::vector<std::string> zoneIds;
  std::vector<std::string> stationIds;
  std::vector<std::string> lockerIds;

  /// Share of total demand per zone; sums to one after normalization.
  std::vector<double> demand;

  Matrix stationDist;  ///< zone x station distance
  Matrix lockerDist;   ///< zone x locker distance
  Matrix stationService;  ///< service level in [0,1] when served by a station
  Matrix lockerService;   ///< service level in [0,1] when served by a locker
  Matrix stationWeight;   ///< MNL weight exp(utility), strictly positive
  Matrix lockerWeight;

  /// Maximum (or exact) number of lockers opened and stations closed.
  int budget = 0;
  CardinalityMode mode = CardinalityMode::AtMost;
  /// When false the locker-count row is dropped entirely.
  bool lockerCapActive = true;

  std::size_t numZones() const noexcept { return zoneIds.size(); }
  std::size_t numStations() const noexcept { return stationIds.size(); }
  std::size_t numLockers() const noexcept { return lockerIds.size(); }
};

/// A configuration of the network.
struct Solution {
  std::vector<std::uint8_t> lockerOpen;   ///< 1 if the candidate locker is opened
  std::vector<std::uint8_t> stationKept;  ///< 1 if the station stays in operation

  int openLockers() const noexcept;
  int closedStations() const noexcept;

  bool operator==(const Solution&) const = default;
  /// Lexicographic order on (lockers, stations), 0 < 1.
  auto operator<=>(const Solution&) const = default;
};

/// All stations kept, no locker opened.
Solution statusQuo(const Instance& instance);

struct ValidationReport {
  std::vector<std::string> errors;
  /// Soft findings, e.g. service that rises with distance.
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

ValidationReport validate(const Instance& instance);

/// Throws ValidationError listing every hard violation.
void requireValid(const Instance& instance);

/// Divides demands by their total. An all-zero vector becomes uniform.
void normalizeDemand(Instance& instance);

/// Recomputes both weight matrices as exp(-alpha * distance).
void applyDistanceDecay(Instance& instance, double alpha);

/// Checks that `sol` has one entry per locker and per station and is 0/1.
void requireShape(const Instance& instance, const Solution& sol);

} // namespace locus
