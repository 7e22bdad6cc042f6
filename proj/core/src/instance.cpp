#include "locus/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "locus/errors.hpp"

namespace locus {

const char* toString(CardinalityMode mode) noexcept {
  return mode == CardinalityMode::Exact ? "EXACT" : "AT_MOST";
}

CardinalityMode cardinalityModeFromString(const std::string& text) {
  if (text == "AT_MOST") return CardinalityMode::AtMost;
  if (text == "EXACT") return CardinalityMode::Exact;
  throw ValidationError("unknown mode '" + text + "' (expected AT_MOST or EXACT)");
}

int Solution::openLockers() const noexcept {
  return static_cast<int>(std::count(lockerOpen.begin(), lockerOpen.end(), std::uint8_t{1}));
}

int Solution::closedStations() const noexcept {
  return static_cast<int>(stationKept.size()) -
         static_cast<int>(std::count(stationKept.begin(), stationKept.end(), std::uint8_t{1}));
}

Solution statusQuo(const Instance& instance) {
  return Solution{std::vector<std::uint8_t>(instance.numLockers(), 0),
                  std::vector<std::uint8_t>(instance.numStations(), 1)};
}

namespace {

void checkShape(ValidationReport& report, const Matrix& m, std::size_t rows, std::size_t cols,
                const char* name) {
  // A matrix with zero columns may legitimately report zero rows.
  if (m.cols() != cols || (m.rows() != rows && !(cols == 0 && m.rows() == 0))) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected " << rows << "x" << cols;
    report.errors.push_back(os.str());
  }
}

template <class Pred>
void checkEntries(ValidationReport& report, const Matrix& m, const char* name, Pred ok,
                  const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!ok(m(i, j))) {
        std::ostringstream os;
        os << name << "[" << i << "][" << j << "] = " << m(i, j) << " " << what;
        report.errors.push_back(os.str());
        return;
      }
    }
  }
}

void checkMonotone(ValidationReport& report, const Matrix& dist, const Matrix& service,
                   const char* name) {
  if (dist.rows() != service.rows() || dist.cols() != service.cols()) return;
  for (std::size_t i = 0; i < dist.rows(); ++i) {
    for (std::size_t a = 0; a < dist.cols(); ++a) {
      for (std::size_t b = 0; b < dist.cols(); ++b) {
        if (dist(i, a) < dist(i, b) && service(i, a) < service(i, b)) {
          std::ostringstream os;
          os << name << " service rises with distance in zone " << i << " (facility " << b
             << " is farther but better than " << a << ")";
          report.warnings.push_back(os.str());
          return;
        }
      }
    }
  }
}

void checkUnique(ValidationReport& report, const std::vector<std::string>& ids, const char* what) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) report.errors.push_back(std::string("duplicate ") + what + " id '" + id + "'");
  }
}

} // namespace

ValidationReport validate(const Instance& in) {
  ValidationReport report;
  const std::size_t nI = in.numZones();
  const std::size_t nJ = in.numLockers();
  const std::size_t nK = in.numStations();

  if (nI == 0) report.errors.emplace_back("instance has no zones");
  checkUnique(report, in.zoneIds, "zone");
  checkUnique(report, in.stationIds, "station");
  checkUnique(report, in.lockerIds, "locker");

  if (in.demand.size() != nI) {
    report.errors.push_back("demand has " + std::to_string(in.demand.size()) + " entries, expected " +
                            std::to_string(nI));
  } else {
    double total = 0.0;
    for (double d : in.demand) {
      if (!std::isfinite(d) || d < 0.0) {
        report.errors.emplace_back("demand shares must be finite and nonnegative");
        break;
      }
      total += d;
    }
    if (nI > 0 && std::abs(total - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "demand shares sum to " << total << ", expected 1";
      report.errors.push_back(os.str());
    }
  }

  checkShape(report, in.stationDist, nI, nK, "distStation");
  checkShape(report, in.lockerDist, nI, nJ, "distLocker");
  checkShape(report, in.stationService, nI, nK, "aStation");
  checkShape(report, in.lockerService, nI, nJ, "aLocker");
  checkShape(report, in.stationWeight, nI, nK, "thetaStation");
  checkShape(report, in.lockerWeight, nI, nJ, "thetaLocker");
  if (!report.ok()) return report;

  const auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  const auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  checkEntries(report, in.stationDist, "distStation", nonneg, "is not a nonnegative distance");
  checkEntries(report, in.lockerDist, "distLocker", nonneg, "is not a nonnegative distance");
  checkEntries(report, in.stationService, "aStation", unit, "is outside [0,1]");
  checkEntries(report, in.lockerService, "aLocker", unit, "is outside [0,1]");
  checkEntries(report, in.stationWeight, "thetaStation", positive, "is not strictly positive");
  checkEntries(report, in.lockerWeight, "thetaLocker", positive, "is not strictly positive");

  const auto cap = static_cast<int>(std::max(nJ, nK));
  if (in.budget < 0 || in.budget > cap) {
    report.errors.push_back("budget P=" + std::to_string(in.budget) + " outside [0, " +
                            std::to_string(cap) + "]");
  }

  checkMonotone(report, in.stationDist, in.stationService, "station");
  checkMonotone(report, in.lockerDist, in.lockerService, "locker");
  return report;
}

void requireValid(const Instance& instance) {
  const auto report = validate(instance);
  if (report.ok()) return;
  std::string message = "invalid instance:";
  for (const auto& e : report.errors) message += "\n  " + e;
  throw ValidationError(message);
}

void normalizeDemand(Instance& instance) {
  auto& d = instance.demand;
  if (d.empty()) return;
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  if (!(total > 0.0)) {
    std::fill(d.begin(), d.end(), 1.0 / static_cast<double>(d.size()));
    return;
  }
  for (double& v : d) v /= total;
}

void applyDistanceDecay(Instance& instance, double alpha) {
  const auto decay = [alpha](const Matrix& dist) {
    Matrix w(dist.rows(), dist.cols());
    for (std::size_t i = 0; i < dist.rows(); ++i)
      for (std::size_t j = 0; j < dist.cols(); ++j) w(i, j) = std::exp(-alpha * dist(i, j));
    return w;
  };
  instance.stationWeight = decay(instance.stationDist);
  instance.lockerWeight = decay(instance.lockerDist);
}

void requireShape(const Instance& instance, const Solution& sol) {
  if (sol.lockerOpen.size() != instance.numLockers() ||
      sol.stationKept.size() != instance.numStations()) {
    throw ValidationError("solution has " + std::to_string(sol.lockerOpen.size()) + " lockers and " +
                          std::to_string(sol.stationKept.size()) + " stations; instance has " +
                          std::to_string(instance.numLockers()) + " and " +
                          std::to_string(instance.numStations()));
  }
  const auto binary = [](std::uint8_t v) { return v <= 1; };
  if (!std::all_of(sol.lockerOpen.begin(), sol.lockerOpen.end(), binary) ||
      !std::all_of(sol.stationKept.begin(), sol.stationKept.end(), binary)) {
    throw ValidationError("solution entries must be 0 or 1");
  }
}

} // namespace locus
