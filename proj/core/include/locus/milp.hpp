#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locus/instance.hpp"
#include "locus/milp_model.hpp"

namespace locus {

/// Variable naming shared by every builder; the enumeration backend and
/// the solution recovery rely on it after an MPS round trip.
namespace names {
std::string lockerOpen(std::size_t j);          // x_j
std::string stationKept(std::size_t k);         // r_k
std::string zoneInverse(std::size_t i);         // z_i
std::string lockerProduct(std::size_t i, std::size_t j);   // x_j * z_i
std::string stationProduct(std::size_t i, std::size_t k);  // r_k * z_i
std::string hypograph(std::size_t i);           // beta_i
std::string normalizationRow(std::size_t i);
inline constexpr const char* kLockerCapRow = "cap_lockers";
inline constexpr const char* kStationCapRow = "cap_stations";
} // namespace names

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

/// Role of each variable, recovered from its name.
struct ModelLayout {
  std::vector<std::size_t> lockerVar;   ///< per locker, kNoIndex if absent
  std::vector<std::size_t> stationVar;  ///< per station
  std::vector<std::size_t> zoneVar;     ///< z_i per zone
  std::vector<std::size_t> betaVar;     ///< beta_i per zone

  /// For product variables: the zone and the binary they multiply.
  struct Product {
    std::size_t var;
    std::size_t zone;
    std::size_t binary;
  };
  std::vector<Product> products;
  std::vector<std::size_t> normRow;  ///< per zone, kNoIndex if absent

  static ModelLayout infer(const MilpModel& model);
};

/// Exact reformulation with big-U linking; U_i is the global upper bound on z_i.
MilpModel buildBasic(const Instance& instance);

/// Same variables, linking rows replaced by conditional McCormick rows.
MilpModel buildStrengthened(const Instance& instance);

/// Adds the budget rows on the given binaries (helper for every builder).
void addCardinalityRows(MilpModel& model, const Instance& instance,
                        const std::vector<std::size_t>& lockerVars,
                        const std::vector<std::size_t>& stationVars);

/// Rounds the binaries of a solved model to a Solution. Throws
/// IntegralityViolation if a binary is more than 1e-6 from 0/1, and, for
/// BASIC/MC models, ObjectiveMismatch if the recomputed service level
/// differs from the reported objective by more than 1e-6.
Solution recoverSolution(const Instance& instance, const MilpModel& model, const MilpSolution& ms);

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kObjectiveMatchTol = 1e-6;

} // namespace locus
