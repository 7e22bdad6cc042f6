#include "locus/evaluate.hpp"

#include <algorithm>
#include <cstdlib>

#include "locus/errors.hpp"

namespace locus {

Coefficients deriveCoefficients(const Instance& in) {
  Coefficients c{Matrix(in.numZones(), in.numStations()), Matrix(in.numZones(), in.numLockers())};
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    const double d = in.demand[i];
    for (std::size_t k = 0; k < in.numStations(); ++k)
      c.station(i, k) = d * in.stationService(i, k) * in.stationWeight(i, k);
    for (std::size_t j = 0; j < in.numLockers(); ++j)
      c.locker(i, j) = d * in.lockerService(i, j) * in.lockerWeight(i, j);
  }
  return c;
}

double serviceLevel(const Instance& instance, const Solution& sol) {
  requireShape(instance, sol);
  return Evaluator(instance).serviceLevel(sol);
}

FeasibilityReport checkFeasibility(const Instance& in, const Solution& sol) {
  requireShape(in, sol);
  const int open = sol.openLockers();
  const int closed = sol.closedStations();
  const int p = in.budget;

  FeasibilityReport report;
  if (in.mode == CardinalityMode::AtMost) {
    report.lockerViolation = std::max(open - p, 0);
    report.stationViolation = std::max(closed - p, 0);
  } else {
    report.lockerViolation = std::abs(open - p);
    report.stationViolation = std::abs(closed - p);
  }
  if (!in.lockerCapActive) report.lockerViolation = 0;
  report.ok = report.lockerViolation == 0 && report.stationViolation == 0;
  return report;
}

Penalty defaultPenalty(CardinalityMode mode) {
  return mode == CardinalityMode::Exact ? Penalty{PenaltyKind::Squared, 1.0}
                                        : Penalty{PenaltyKind::Hinge, 2.0};
}

Solution splitConcatenated(const Instance& in, std::span<const std::uint8_t> X) {
  const std::size_t nK = in.numStations();
  if (X.size() != nK + in.numLockers()) {
    throw ValidationError("concatenated vector has " + std::to_string(X.size()) +
                          " entries, expected " + std::to_string(nK + in.numLockers()));
  }
  Solution sol;
  sol.stationKept.assign(X.begin(), X.begin() + static_cast<std::ptrdiff_t>(nK));
  sol.lockerOpen.assign(X.begin() + static_cast<std::ptrdiff_t>(nK), X.end());
  return sol;
}

std::vector<std::uint8_t> concatenate(const Solution& sol) {
  std::vector<std::uint8_t> X(sol.stationKept);
  X.insert(X.end(), sol.lockerOpen.begin(), sol.lockerOpen.end());
  return X;
}

double penalizedObjective(const Instance& instance, std::span<const std::uint8_t> X,
                          const Penalty& penalty) {
  const Solution sol = splitConcatenated(instance, X);
  requireShape(instance, sol);
  return Evaluator(instance).penalized(X, penalty);
}

Evaluator::Evaluator(const Instance& in)
    : nZones_(in.numZones()),
      nStations_(in.numStations()),
      nLockers_(in.numLockers()),
      budget_(in.budget),
      mode_(in.mode),
      lockerCap_(in.lockerCapActive),
      coef_(deriveCoefficients(in)),
      stationWeight_(in.stationWeight),
      lockerWeight_(in.lockerWeight) {}

double Evaluator::serviceLevel(std::span<const std::uint8_t> lockerOpen,
                               std::span<const std::uint8_t> stationKept) const {
  double total = 0.0;
  for (std::size_t i = 0; i < nZones_; ++i) {
    double num = 0.0;
    double den = 0.0;
    const auto bS = coef_.station.row(i);
    const auto wS = stationWeight_.row(i);
    for (std::size_t k = 0; k < nStations_; ++k) {
      if (stationKept[k]) {
        num += bS[k];
        den += wS[k];
      }
    }
    const auto bL = coef_.locker.row(i);
    const auto wL = lockerWeight_.row(i);
    for (std::size_t j = 0; j < nLockers_; ++j) {
      if (lockerOpen[j]) {
        num += bL[j];
        den += wL[j];
      }
    }
    if (den > 0.0) total += num / den;
  }
  return total;
}

double Evaluator::penalized(std::span<const std::uint8_t> X, const Penalty& penalty) const {
  if (penalty.kind == PenaltyKind::Squared && mode_ == CardinalityMode::AtMost) {
    throw ConfigError("squared penalty encodes equality budgets; use HINGE with AT_MOST");
  }
  if (X.size() != nStations_ + nLockers_) {
    throw ValidationError("concatenated vector has wrong length");
  }
  const auto kept = X.first(nStations_);
  const auto open = X.subspan(nStations_);

  const double c = serviceLevel(open, kept);
  int sumOpen = 0;
  for (auto v : open) sumOpen += v;
  int sumKept = 0;
  for (auto v : kept) sumKept += v;

  const auto rho = [&](int y) {
    const double v = static_cast<double>(y);
    return penalty.kind == PenaltyKind::Hinge ? std::max(v, 0.0) : v * v;
  };
  double result = c;
  if (lockerCap_) result -= penalty.weight * rho(sumOpen - budget_);
  result -= penalty.weight * rho(static_cast<int>(nStations_) - budget_ - sumKept);
  return result;
}

} // namespace locus
