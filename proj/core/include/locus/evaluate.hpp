#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "locus/instance.hpp"
#include "locus/matrix.hpp"

namespace locus {

/// Per-(zone, facility) numerator coefficients demand * service * weight.
struct Coefficients {
  Matrix station;
  Matrix locker;
};

Coefficients deriveCoefficients(const Instance& instance);

/// Demand-weighted expected service under MNL choice. A zone with no open
/// facility contributes 0, so the all-closed network scores 0.
double serviceLevel(const Instance& instance, const Solution& sol);

struct FeasibilityReport {
  bool ok = true;
  int lockerViolation = 0;
  int stationViolation = 0;
};

FeasibilityReport checkFeasibility(const Instance& instance, const Solution& sol);

enum class PenaltyKind { Hinge, Squared };

struct Penalty {
  PenaltyKind kind = PenaltyKind::Hinge;
  double weight = 2.0;
};

/// HINGE (weight 2) for AT_MOST, SQUARED (weight 1) for EXACT.
Penalty defaultPenalty(CardinalityMode mode);

/// Service level of X = [stations kept..., lockers open...] minus the
/// budget-violation penalties. Throws ConfigError for SQUARED with AT_MOST.
double penalizedObjective(const Instance& instance, std::span<const std::uint8_t> concatenated,
                          const Penalty& penalty);

/// Splits X = [r, x] into a Solution and back.
Solution splitConcatenated(const Instance& instance, std::span<const std::uint8_t> concatenated);
std::vector<std::uint8_t> concatenate(const Solution& sol);

/// Cached evaluator for hot loops (PSO, oracle). Holds its own copy of the
/// coefficient tables so it outlives the instance reference it was built from.
class Evaluator {
public:
  explicit Evaluator(const Instance& instance);

  double serviceLevel(std::span<const std::uint8_t> lockerOpen,
                      std::span<const std::uint8_t> stationKept) const;
  double serviceLevel(const Solution& sol) const {
    return serviceLevel(sol.lockerOpen, sol.stationKept);
  }
  /// Same as the free penalizedObjective, without re-deriving coefficients.
  double penalized(std::span<const std::uint8_t> concatenated, const Penalty& penalty) const;

  std::size_t numZones() const noexcept { return nZones_; }
  std::size_t numStations() const noexcept { return nStations_; }
  std::size_t numLockers() const noexcept { return nLockers_; }

private:
  std::size_t nZones_;
  std::size_t nStations_;
  std::size_t nLockers_;
  int budget_;
  CardinalityMode mode_;
  bool lockerCap_;
  Coefficients coef_;
  Matrix stationWeight_;
  Matrix lockerWeight_;
};

} // namespace locus
