#pragma once

#include <cstddef>
#include <vector>

#include "locus/backend.hpp"
#include "locus/evaluate.hpp"
#include "locus/instance.hpp"
#include "locus/milp_model.hpp"

namespace locus {

/// sqrt of zone i's service numerator at `sol`.
double fValue(const Coefficients& coef, const Solution& sol, std::size_t zone);
double fValue(const Instance& instance, const Solution& sol, std::size_t zone);

/// Zone i's open weight at `sol`.
double openWeight(const Instance& instance, const Solution& sol, std::size_t zone);

/// y <- (1 - gamma) y + gamma * f / den, evaluated at `sol`; a zone with
/// nothing open has target 0.
std::vector<double> updateY(const Instance& instance, const Solution& sol, const std::vector<double>& y,
                            double gamma);

/// Tangent of f_i at a point with the slope guard: grad = b / (2 f + eps).
struct ZoneCut {
  double f = 0.0;
  std::vector<double> gradLocker;
  std::vector<double> gradStation;

  /// Right-hand side of the cut evaluated at `at`, for a cut expanded at `origin`.
  double evaluate(const Solution& origin, const Solution& at) const;
};

std::vector<ZoneCut> cutCoefficients(const Instance& instance, const Solution& sol, double eps);

/// Recorded expansion points with one cut per zone each.
class CutSet {
public:
  bool contains(const Solution& sol) const;
  /// Returns false (and records nothing) if `sol` is already present.
  bool add(const Instance& instance, const Solution& sol, double eps);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Solution>& points() const noexcept { return points_; }
  const std::vector<std::vector<ZoneCut>>& cuts() const noexcept { return cuts_; }

private:
  std::vector<Solution> points_;
  std::vector<std::vector<ZoneCut>> cuts_;  // per point, per zone
};

/// max sum 2 y_i beta_i - sum y_i^2 (open weight of zone i) subject to the
/// recorded cuts on beta and the budget rows.
MilpModel buildSubMilp(const Instance& instance, const CutSet& cuts, const std::vector<double>& y);

/// Default: y is refreshed from the previous point before each solve. The
/// alternative solves first, so the first sub-problem sees y = 0.
enum class UpdateOrder { UpdateThenSolve, SolveThenUpdate };

struct QtlaParams {
  double gamma = 0.9;
  int maxIterations = 50;
  double epsilon = 1e-4;
  UpdateOrder order = UpdateOrder::UpdateThenSolve;
  Backend backend;
  SolveLimits limits;
};

struct QtlaResult {
  Solution best;     ///< best budget-feasible point seen
  double value = 0.0;
  int iterations = 0;  ///< sub-problem solves
  bool converged = false;  ///< stopped on a repeated point
  std::vector<double> trace;  ///< service level of each new iterate
};

/// Starts from everything open with y = 0. Throws EmptyFeasibleSet if the
/// budget rows admit no point.
QtlaResult runQtla(const Instance& instance, const QtlaParams& params);

std::vector<double> defaultGammaGrid();

struct SweepResult {
  double bestGamma = 0.0;
  std::vector<double> gammas;
  std::vector<QtlaResult> runs;  ///< parallel to gammas

  const QtlaResult& best() const;
};

/// One run per grid value (up to `jobs` at a time); ties go to the smaller gamma.
SweepResult gammaSweep(const Instance& instance, const std::vector<double>& grid, const QtlaParams& params,
                       unsigned jobs = 1);

} // namespace locus
