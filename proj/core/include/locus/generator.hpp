#pragma once

#include <cstdint>
#include <vector>

#include "locus/instance.hpp"

namespace locus {

/// Right-continuous step function: level values[e] for distances up to and
/// including thresholds[e], `beyond` past the last threshold.
struct ServiceTable {
  std::vector<double> thresholds;
  std::vector<double> values;
  double beyond = 0.0;
};

/// 1 / 0.5 / 0.2 up to 1, 2, 3 (in units of 100), then 0.
ServiceTable defaultServiceTable();
/// Tighter walking thresholds: 1, 1.5, 2.
ServiceTable caseStudyServiceTable();

double stepwiseService(double distance, const ServiceTable& table);

struct GenSpec {
  std::size_t zones = 50;
  std::size_t lockers = 25;
  std::size_t stations = 25;
  double alpha = 1.0;
  int budget = 5;
  CardinalityMode mode = CardinalityMode::AtMost;
  bool lockerCapActive = true;
  double boxSide = 1000.0;
  double demandLow = 0.0;
  double demandHigh = 100.0;
  /// Distances are divided by this before entering weights and service.
  double distanceUnit = 100.0;
  ServiceTable service = defaultServiceTable();
  std::uint64_t seed = 1;
};

/// Throws ConfigError on a malformed spec.
void validateSpec(const GenSpec& spec);

/// Points uniform in the square, raw demands uniform then normalized,
/// Euclidean distances, weights exp(-alpha * distance). Each point set and
/// the demands use their own sub-stream of `seed`.
Instance generate(const GenSpec& spec);

} // namespace locus
