#include "locus/qtla.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "locus/errors.hpp"
#include "locus/instance_io.hpp"
#include "locus/milp.hpp"

namespace locus {

double fValue(const Coefficients& coef, const Solution& sol, std::size_t zone) {
  double num = 0.0;
  for (std::size_t k = 0; k < sol.stationKept.size(); ++k)
    if (sol.stationKept[k]) num += coef.station(zone, k);
  for (std::size_t j = 0; j < sol.lockerOpen.size(); ++j)
    if (sol.lockerOpen[j]) num += coef.locker(zone, j);
  return std::sqrt(num);
}

double fValue(const Instance& instance, const Solution& sol, std::size_t zone) {
  return fValue(deriveCoefficients(instance), sol, zone);
}

double openWeight(const Instance& instance, const Solution& sol, std::size_t zone) {
  double den = 0.0;
  for (std::size_t k = 0; k < sol.stationKept.size(); ++k)
    if (sol.stationKept[k]) den += instance.stationWeight(zone, k);
  for (std::size_t j = 0; j < sol.lockerOpen.size(); ++j)
    if (sol.lockerOpen[j]) den += instance.lockerWeight(zone, j);
  return den;
}

namespace {

std::vector<double> updateY(const Instance& instance, const Coefficients& coef, const Solution& sol,
                            const std::vector<double>& y, double gamma) {
  std::vector<double> out(instance.numZones());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double den = openWeight(instance, sol, i);
    const double target = den > 0.0 ? fValue(coef, sol, i) / den : 0.0;
    out[i] = (1.0 - gamma) * y[i] + gamma * target;
  }
  return out;
}

} // namespace

std::vector<double> updateY(const Instance& instance, const Solution& sol, const std::vector<double>& y,
                            double gamma) {
  requireShape(instance, sol);
  if (y.size() != instance.numZones()) throw ValidationError("y must have one entry per zone");
  return updateY(instance, deriveCoefficients(instance), sol, y, gamma);
}

double ZoneCut::evaluate(const Solution& origin, const Solution& at) const {
  double v = f;
  for (std::size_t j = 0; j < gradLocker.size(); ++j)
    v += gradLocker[j] * (static_cast<double>(at.lockerOpen[j]) - origin.lockerOpen[j]);
  for (std::size_t k = 0; k < gradStation.size(); ++k)
    v += gradStation[k] * (static_cast<double>(at.stationKept[k]) - origin.stationKept[k]);
  return v;
}

std::vector<ZoneCut> cutCoefficients(const Instance& instance, const Solution& sol, double eps) {
  requireShape(instance, sol);
  if (!(eps > 0.0)) throw ConfigError("cut guard epsilon must be positive");
  const Coefficients coef = deriveCoefficients(instance);
  std::vector<ZoneCut> out(instance.numZones());
  for (std::size_t i = 0; i < out.size(); ++i) {
    ZoneCut& c = out[i];
    c.f = fValue(coef, sol, i);
    const double scale = 2.0 * c.f + eps;
    c.gradLocker.resize(instance.numLockers());
    c.gradStation.resize(instance.numStations());
    for (std::size_t j = 0; j < c.gradLocker.size(); ++j) c.gradLocker[j] = coef.locker(i, j) / scale;
    for (std::size_t k = 0; k < c.gradStation.size(); ++k) c.gradStation[k] = coef.station(i, k) / scale;
  }
  return out;
}

bool CutSet::contains(const Solution& sol) const {
  return std::find(points_.begin(), points_.end(), sol) != points_.end();
}

bool CutSet::add(const Instance& instance, const Solution& sol, double eps) {
  if (contains(sol)) return false;
  cuts_.push_back(cutCoefficients(instance, sol, eps));
  points_.push_back(sol);
  return true;
}

MilpModel buildSubMilp(const Instance& instance, const CutSet& cuts, const std::vector<double>& y) {
  if (cuts.empty()) throw ConfigError("sub-problem needs at least one recorded point");
  if (y.size() != instance.numZones()) throw ValidationError("y must have one entry per zone");
  const Coefficients coef = deriveCoefficients(instance);
  const std::size_t nI = instance.numZones();
  const std::size_t nJ = instance.numLockers();
  const std::size_t nK = instance.numStations();

  MilpModel model(Formulation::QtlaSub, instanceHash(instance));
  std::vector<std::size_t> xv(nJ), rv(nK), beta(nI);
  for (std::size_t j = 0; j < nJ; ++j) xv[j] = model.addBinary(names::lockerOpen(j));
  for (std::size_t k = 0; k < nK; ++k) rv[k] = model.addBinary(names::stationKept(k));
  for (std::size_t i = 0; i < nI; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < nK; ++k) total += coef.station(i, k);
    for (std::size_t j = 0; j < nJ; ++j) total += coef.locker(i, j);
    beta[i] = model.addContinuous(names::hypograph(i), 0.0, std::sqrt(total));
  }

  for (std::size_t i = 0; i < nI; ++i) {
    if (y[i] < 0.0 || !std::isfinite(y[i])) throw ValidationError("y must be finite and nonnegative");
    model.addObjective(beta[i], 2.0 * y[i]);
    const double y2 = y[i] * y[i];
    for (std::size_t k = 0; k < nK; ++k) model.addObjective(rv[k], -y2 * instance.stationWeight(i, k));
    for (std::size_t j = 0; j < nJ; ++j) model.addObjective(xv[j], -y2 * instance.lockerWeight(i, j));
  }

  for (std::size_t t = 0; t < cuts.size(); ++t) {
    const Solution& origin = cuts.points()[t];
    for (std::size_t i = 0; i < nI; ++i) {
      const ZoneCut& c = cuts.cuts()[t][i];
      // beta_i - sum g (v - v^t) <= f
      std::vector<Term> terms{{beta[i], 1.0}};
      double rhs = c.f;
      for (std::size_t j = 0; j < nJ; ++j) {
        terms.push_back({xv[j], -c.gradLocker[j]});
        rhs -= c.gradLocker[j] * origin.lockerOpen[j];
      }
      for (std::size_t k = 0; k < nK; ++k) {
        terms.push_back({rv[k], -c.gradStation[k]});
        rhs -= c.gradStation[k] * origin.stationKept[k];
      }
      model.addRow("cut_" + std::to_string(i) + "_" + std::to_string(t), std::move(terms), RowSense::LessEqual,
                   rhs);
    }
  }
  addCardinalityRows(model, instance, xv, rv);
  return model;
}

QtlaResult runQtla(const Instance& instance, const QtlaParams& params) {
  requireValid(instance);
  if (!(params.gamma > 0.0 && params.gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (params.maxIterations < 1) throw ConfigError("iteration limit must be at least 1");
  const Coefficients coef = deriveCoefficients(instance);
  const Evaluator eval(instance);

  Solution point;
  point.lockerOpen.assign(instance.numLockers(), 1);
  point.stationKept.assign(instance.numStations(), 1);
  std::vector<double> y(instance.numZones(), 0.0);
  CutSet cuts;

  QtlaResult res;
  bool haveBest = false;
  const auto consider = [&](const Solution& s) {
    if (!checkFeasibility(instance, s).ok) return;
    const double v = eval.serviceLevel(s);
    if (!haveBest || v > res.value || (v == res.value && s < res.best)) {
      res.best = s;
      res.value = v;
      haveBest = true;
    }
  };
  consider(point);

  int n = 0;
  while (true) {
    cuts.add(instance, point, params.epsilon);
    ++n;
    if (params.order == UpdateOrder::UpdateThenSolve) y = updateY(instance, coef, point, y, params.gamma);
    const MilpModel sub = buildSubMilp(instance, cuts, y);
    const MilpSolution ms = solve(sub, params.backend, params.limits);
    if (!ms.hasAssignment()) {
      if (ms.status == SolveStatus::Infeasible) throw EmptyFeasibleSet("budget rows admit no configuration");
      throw ExternalSolverFailure(std::string("sub-problem returned no assignment, status ") + toString(ms.status));
    }
    if (params.order == UpdateOrder::SolveThenUpdate) y = updateY(instance, coef, point, y, params.gamma);
    const Solution next = recoverSolution(instance, sub, ms);
    res.trace.push_back(eval.serviceLevel(next));
    consider(next);
    if (cuts.contains(next)) {
      res.converged = true;
      break;
    }
    if (n > params.maxIterations) break;
    point = next;
  }
  res.iterations = n;
  if (!haveBest) throw EmptyFeasibleSet("no budget-feasible point was visited");
  return res;
}

std::vector<double> defaultGammaGrid() { return {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}; }

const QtlaResult& SweepResult::best() const {
  for (std::size_t g = 0; g < gammas.size(); ++g)
    if (gammas[g] == bestGamma) return runs[g];
  throw Error("sweep result is empty");
}

SweepResult gammaSweep(const Instance& instance, const std::vector<double>& grid, const QtlaParams& params,
                       unsigned jobs) {
  if (grid.empty()) throw ConfigError("gamma grid is empty");
  SweepResult out;
  out.gammas = grid;
  out.runs.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t g; (g = next.fetch_add(1)) < grid.size();) {
      try {
        QtlaParams p = params;
        p.gamma = grid[g];
        out.runs[g] = runQtla(instance, p);
      } catch (...) {
        errors[g] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double a = out.runs[g].value, b = out.runs[best].value;
    if (a > b || (a == b && grid[g] < grid[best])) best = g;
  }
  out.bestGamma = grid[best];
  return out;
}

} // namespace locus
