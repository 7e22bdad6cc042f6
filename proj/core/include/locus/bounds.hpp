#pragma once

#include <cstddef>
#include <vector>

#include "locus/instance.hpp"

namespace locus {

/// Bounds on z_i = 1 / (sum of open weights in zone i) conditioned on one
/// locker's state.
struct LockerBounds {
  double upperIfOpen = 0.0;
  double lowerIfClosed = 0.0;
  double lowerIfOpen = 0.0;
  /// Opening this locker is impossible (no locker budget); the bounds hold vacuously.
  bool openVacuous = false;
};

/// Same, conditioned on one station's state.
struct StationBounds {
  double upperIfKept = 0.0;
  double lowerIfClosed = 0.0;
  double lowerIfKept = 0.0;
  /// Closing this station is impossible (P = 0); lowerIfClosed holds vacuously.
  bool closedVacuous = false;
};

/// Global and conditional bounds for every zone, as consumed by the
/// McCormick rows of the strengthened formulation.
class BoundSet {
public:
  BoundSet() = default;
  BoundSet(std::size_t zones, std::size_t stations, std::size_t lockers);

  double& zUpper(std::size_t i) { return zUpper_[i]; }
  double zUpper(std::size_t i) const { return zUpper_[i]; }
  LockerBounds& locker(std::size_t i, std::size_t j) { return locker_[i * nLockers_ + j]; }
  const LockerBounds& locker(std::size_t i, std::size_t j) const { return locker_[i * nLockers_ + j]; }
  StationBounds& station(std::size_t i, std::size_t k) { return station_[i * nStations_ + k]; }
  const StationBounds& station(std::size_t i, std::size_t k) const {
    return station_[i * nStations_ + k];
  }

  std::size_t numZones() const noexcept { return zUpper_.size(); }
  std::size_t numStations() const noexcept { return nStations_; }
  std::size_t numLockers() const noexcept { return nLockers_; }

private:
  std::size_t nStations_ = 0;
  std::size_t nLockers_ = 0;
  std::vector<double> zUpper_;
  std::vector<LockerBounds> locker_;
  std::vector<StationBounds> station_;
};

/// 1 / (sum of the |K|-P smallest station weights). Throws UnboundedZ if
/// |K| - P < 1.
double globalUpper(const Instance& instance, std::size_t zone);
LockerBounds conditionalLocker(const Instance& instance, std::size_t zone, std::size_t locker);
StationBounds conditionalStation(const Instance& instance, std::size_t zone, std::size_t station);

/// All of the above, sorting each zone's weights once.
BoundSet allBounds(const Instance& instance);

} // namespace locus
