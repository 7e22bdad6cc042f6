#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "locus/backend.hpp"
#include "locus/errors.hpp"
#include "locus/milp.hpp"

namespace locus {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr double kMaxCandidates = 5e8;

// A set of binaries whose count is restricted to [lo, hi].
struct Group {
  std::vector<std::size_t> vars;
  long lo = 0;
  long hi = 0;
  // Enumerated as flips away from `baseValue`.
  std::uint8_t baseValue = 0;
  std::vector<std::vector<std::uint32_t>> flips;
};

double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0u);
  if (k > n) return;
  while (true) {
    out.push_back(cur);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t t = i; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
}

// Role of each continuous variable in the completion step.
enum class Role { Zone, Product, Hypograph, Free };

struct Engine {
  const MilpModel& model;
  const SolveLimits& limits;
  ModelLayout layout;

  std::vector<Group> groups;
  std::vector<std::size_t> binaries;
  std::vector<std::size_t> continuous;
  std::vector<Role> role;
  // Column view: per variable, (row, coef).
  std::vector<std::vector<std::pair<std::size_t, double>>> columns;
  std::vector<double> rowTol;
  // Completion data.
  std::vector<std::size_t> productZone, productBinary;  // per variable
  std::vector<std::size_t> zoneOfZVar;                   // per variable
  std::vector<std::vector<std::pair<std::size_t, double>>> zoneDen;  // zone -> (binary, weight)
  std::vector<std::vector<std::pair<std::size_t, double>>> hypoRows;  // var -> (row, coef)
  std::vector<std::size_t> keyOrder;

  Engine(const MilpModel& m, const SolveLimits& l) : model(m), limits(l), layout(ModelLayout::infer(m)) {}

  void prepare() {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    columns.assign(vars.size(), {});
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& t : rows[r].terms) columns[t.var].emplace_back(r, t.coef);

    for (std::size_t v = 0; v < vars.size(); ++v) {
      (vars[v].kind == VarKind::Binary ? binaries : continuous).push_back(v);
    }
    if (binaries.size() > limits.maxBinaries) {
      throw EnumerationTooLarge("model has " + std::to_string(binaries.size()) +
                                " binaries; enumeration cap is " + std::to_string(limits.maxBinaries));
    }
    buildGroups();
    buildCompletion();
    buildTolerances();
    buildKeyOrder();
  }

  void buildGroups() {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    std::vector<long> groupOf(vars.size(), -1);
    std::map<std::vector<std::size_t>, std::size_t> bySupport;
    for (const auto& row : rows) {
      const bool binaryOnly = std::all_of(row.terms.begin(), row.terms.end(), [&](const Term& t) {
        return vars[t.var].kind == VarKind::Binary;
      });
      if (!binaryOnly || row.terms.empty()) continue;
      const double c = row.terms.front().coef;
      if (!std::all_of(row.terms.begin(), row.terms.end(), [&](const Term& t) { return t.coef == c; })) {
        throw EnumerationTooLarge("row " + row.name + " is not a cardinality row; enumeration unsupported");
      }
      std::vector<std::size_t> support;
      for (const auto& t : row.terms) support.push_back(t.var);
      auto it = bySupport.find(support);
      if (it == bySupport.end()) {
        for (auto v : support) {
          if (groupOf[v] != -1) {
            throw EnumerationTooLarge("overlapping cardinality rows; enumeration unsupported");
          }
        }
        Group g;
        g.vars = support;
        g.lo = 0;
        g.hi = static_cast<long>(support.size());
        groups.push_back(std::move(g));
        it = bySupport.emplace(support, groups.size() - 1).first;
        for (auto v : support) groupOf[v] = static_cast<long>(it->second);
      }
      Group& g = groups[it->second];
      // c * count (sense) rhs
      const double bound = row.rhs / c;
      RowSense sense = row.sense;
      if (c < 0.0 && sense != RowSense::Equal)
        sense = sense == RowSense::LessEqual ? RowSense::GreaterEqual : RowSense::LessEqual;
      const long floorB = static_cast<long>(std::floor(bound + 1e-9));
      const long ceilB = static_cast<long>(std::ceil(bound - 1e-9));
      if (sense == RowSense::LessEqual || sense == RowSense::Equal) g.hi = std::min(g.hi, floorB);
      if (sense == RowSense::GreaterEqual || sense == RowSense::Equal) g.lo = std::max(g.lo, ceilB);
    }
    for (auto v : binaries) {
      if (groupOf[v] == -1) {
        Group g;
        g.vars = {v};
        g.lo = 0;
        g.hi = 1;
        groups.push_back(std::move(g));
      }
    }
    double total = 1.0;
    for (auto& g : groups) {
      const std::size_t n = g.vars.size();
      g.lo = std::max(g.lo, 0L);
      g.hi = std::min(g.hi, static_cast<long>(n));
      double ones = 0.0;
      for (long s = g.lo; s <= g.hi; ++s) ones += choose(n, static_cast<std::size_t>(s));
      // Same count whichever side is enumerated; prefer flipping the minority.
      const double mid = static_cast<double>(n) / 2.0;
      g.baseValue = (static_cast<double>(g.hi) <= mid || g.lo == 0) ? 0 : 1;
      if (g.baseValue == 0 && static_cast<double>(g.lo) > mid) g.baseValue = 1;
      total *= ones;
      if (total > kMaxCandidates) {
        throw EnumerationTooLarge("enumeration would visit more than " + std::to_string(kMaxCandidates) +
                                  " candidates");
      }
      if (g.lo > g.hi) continue;
      for (long s = g.lo; s <= g.hi; ++s) {
        const std::size_t flipsCount =
            g.baseValue == 0 ? static_cast<std::size_t>(s) : n - static_cast<std::size_t>(s);
        combinations(n, flipsCount, g.flips);
      }
    }
  }

  void buildCompletion() {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    role.assign(vars.size(), Role::Free);
    productZone.assign(vars.size(), kNoIndex);
    productBinary.assign(vars.size(), kNoIndex);
    zoneOfZVar.assign(vars.size(), kNoIndex);
    hypoRows.assign(vars.size(), {});

    for (const auto& p : layout.products) {
      role[p.var] = Role::Product;
      productZone[p.var] = p.zone;
      productBinary[p.var] = p.binary;
    }
    for (std::size_t i = 0; i < layout.zoneVar.size(); ++i) {
      if (layout.zoneVar[i] == kNoIndex) continue;
      role[layout.zoneVar[i]] = Role::Zone;
      zoneOfZVar[layout.zoneVar[i]] = i;
    }
    std::size_t nZones = layout.zoneVar.size();
    for (const auto& p : layout.products) nZones = std::max(nZones, p.zone + 1);
    zoneDen.assign(nZones, {});
    bool needNorm = !layout.products.empty();
    for (std::size_t i = 0; i < layout.normRow.size() && needNorm; ++i) {
      if (layout.normRow[i] == kNoIndex) continue;
      const Row& row = rows[layout.normRow[i]];
      for (const auto& t : row.terms) {
        if (role[t.var] != Role::Product || productZone[t.var] != i) {
          throw EnumerationTooLarge("normalization row " + row.name + " has an unexpected term");
        }
        zoneDen[i].emplace_back(productBinary[t.var], t.coef);
      }
    }
    for (std::size_t i = 0; i < layout.betaVar.size(); ++i) {
      const std::size_t v = layout.betaVar[i];
      if (v == kNoIndex) continue;
      role[v] = Role::Hypograph;
      for (const auto& [r, c] : columns[v]) {
        const Row& row = rows[r];
        const bool upper = (row.sense == RowSense::LessEqual && c > 0) ||
                           (row.sense == RowSense::GreaterEqual && c < 0);
        const bool othersBinary = std::all_of(row.terms.begin(), row.terms.end(), [&](const Term& t) {
          return t.var == v || vars[t.var].kind == VarKind::Binary;
        });
        if (!upper || !othersBinary) {
          throw EnumerationTooLarge("row " + row.name + " is not a hypograph cut; enumeration unsupported");
        }
        hypoRows[v].emplace_back(r, c);
      }
    }
    for (auto v : continuous) {
      if (role[v] != Role::Free) continue;
      if (!columns[v].empty()) {
        throw EnumerationTooLarge("continuous variable " + vars[v].name +
                                  " has no closed-form completion; enumeration unsupported");
      }
    }
  }

  void buildTolerances() {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    rowTol.assign(rows.size(), kFeasTol);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double scale = std::abs(rows[r].rhs);
      for (const auto& t : rows[r].terms) {
        double mag = std::max(std::abs(vars[t.var].lower), std::abs(vars[t.var].upper));
        if (!std::isfinite(mag)) mag = 1.0;
        scale += std::abs(t.coef) * mag;
      }
      rowTol[r] = kFeasTol * (1.0 + scale);
    }
  }

  void buildKeyOrder() {
    std::vector<bool> used(model.variables().size(), false);
    for (auto v : layout.lockerVar)
      if (v != kNoIndex) { keyOrder.push_back(v); used[v] = true; }
    for (auto v : layout.stationVar)
      if (v != kNoIndex) { keyOrder.push_back(v); used[v] = true; }
    for (auto v : binaries)
      if (!used[v]) keyOrder.push_back(v);
  }

  bool lexSmaller(const std::vector<double>& a, const std::vector<double>& b) const {
    for (auto v : keyOrder) {
      if (a[v] != b[v]) return a[v] < b[v];
    }
    return false;
  }

  // Fills the continuous variables; returns false if no completion exists.
  bool complete(std::vector<double>& values, const std::vector<double>& binAct) const {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    std::vector<double> z(zoneDen.size(), 0.0);
    for (std::size_t i = 0; i < zoneDen.size(); ++i) {
      if (zoneDen[i].empty()) continue;
      double den = 0.0;
      for (const auto& [b, w] : zoneDen[i]) den += w * values[b];
      if (!(den > 0.0)) return false;
      z[i] = 1.0 / den;
    }
    for (auto v : continuous) {
      switch (role[v]) {
        case Role::Zone:
          values[v] = zoneOfZVar[v] < z.size() ? z[zoneOfZVar[v]] : 0.0;
          break;
        case Role::Product:
          values[v] = values[productBinary[v]] * z[productZone[v]];
          break;
        case Role::Hypograph: {
          double best = vars[v].upper;
          for (const auto& [r, c] : hypoRows[v]) {
            // c * beta + binaryPart (sense) rhs
            const double limit = (rows[r].rhs - binAct[r]) / c;
            best = std::min(best, limit);
          }
          if (!std::isfinite(best)) {
            if (model.objective()[v] > 0.0) return false;  // unbounded direction
            best = vars[v].lower;
          }
          if (best < vars[v].lower - kFeasTol) return false;
          values[v] = std::max(best, vars[v].lower);
          break;
        }
        case Role::Free: {
          const double c = model.objective()[v];
          const double pick = c > 0.0 ? vars[v].upper : vars[v].lower;
          if (!std::isfinite(pick)) {
            if (c == 0.0 && std::isfinite(vars[v].lower)) { values[v] = vars[v].lower; break; }
            if (c == 0.0 && std::isfinite(vars[v].upper)) { values[v] = vars[v].upper; break; }
            if (c == 0.0) { values[v] = 0.0; break; }
            throw Error("objective unbounded in variable " + vars[v].name);
          }
          values[v] = pick;
          break;
        }
      }
    }
    return true;
  }

  bool feasible(const std::vector<double>& values, std::vector<double>& act) const {
    const auto& vars = model.variables();
    const auto& rows = model.rows();
    for (auto v : continuous) {
      const double val = values[v];
      const double tol = kFeasTol * (1.0 + std::abs(val));
      if (val < vars[v].lower - tol || val > vars[v].upper + tol) return false;
      if (val == 0.0) continue;
      for (const auto& [r, c] : columns[v]) act[r] += c * val;
    }
    for (auto v : binaries) {
      if (values[v] < vars[v].lower || values[v] > vars[v].upper) return false;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double lhs = act[r];
      const double rhs = rows[r].rhs;
      switch (rows[r].sense) {
        case RowSense::LessEqual:
          if (lhs > rhs + rowTol[r]) return false;
          break;
        case RowSense::GreaterEqual:
          if (lhs < rhs - rowTol[r]) return false;
          break;
        case RowSense::Equal:
          if (std::abs(lhs - rhs) > rowTol[r]) return false;
          break;
      }
    }
    return true;
  }

  double trivialBound() const {
    const auto& vars = model.variables();
    double bound = 0.0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const double c = model.objective()[v];
      if (c == 0.0) continue;
      bound += std::max(c * vars[v].lower, c * vars[v].upper);
    }
    return bound;
  }

  MilpSolution run() {
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    prepare();

    MilpSolution result;
    const auto& vars = model.variables();
    const std::size_t nRows = model.rows().size();

    for (const auto& g : groups) {
      if (g.lo > g.hi) {
        result.status = SolveStatus::Infeasible;
        result.wallSeconds = elapsed();
        return result;
      }
    }

    std::vector<double> values(vars.size(), 0.0);
    std::vector<double> baseAct(nRows, 0.0);
    for (const auto& g : groups) {
      for (auto v : g.vars) {
        values[v] = g.baseValue;
        if (g.baseValue)
          for (const auto& [r, c] : columns[v]) baseAct[r] += c;
      }
    }

    // Odometer over the groups' flip lists; level activities are kept so
    // only the innermost level is re-applied per candidate.
    const std::size_t nG = groups.size();
    std::vector<std::size_t> pos(nG, 0);
    std::vector<std::vector<double>> levelAct(nG + 1, baseAct);
    const auto apply = [&](std::size_t level) {
      levelAct[level + 1] = levelAct[level];
      const Group& g = groups[level];
      for (auto v : g.vars) values[v] = g.baseValue;
      const double sign = g.baseValue == 0 ? 1.0 : -1.0;
      for (auto idx : g.flips[pos[level]]) {
        const std::size_t v = g.vars[idx];
        values[v] = 1.0 - g.baseValue;
        for (const auto& [r, c] : columns[v]) levelAct[level + 1][r] += sign * c;
      }
    };
    for (std::size_t l = 0; l < nG; ++l) apply(l);

    bool haveBest = false;
    std::vector<double> best;
    double bestObj = -kInfinity;
    std::vector<double> act(nRows);
    bool timedOut = false;
    std::size_t visited = 0;

    while (true) {
      if (haveBest && elapsed() > limits.timeLimitSeconds) {
        timedOut = true;
        break;
      }
      ++visited;
      const std::vector<double>& binAct = levelAct[nG];
      if (complete(values, binAct)) {
        act = binAct;
        if (feasible(values, act)) {
          const double obj = model.objectiveValue(values);
          const bool better = !haveBest || obj > bestObj + kTieTol ||
                              (std::abs(obj - bestObj) <= kTieTol && lexSmaller(values, best));
          if (better) {
            best = values;
            bestObj = obj;
            haveBest = true;
          }
        }
      }
      // advance
      std::size_t level = nG;
      while (level > 0) {
        --level;
        if (++pos[level] < groups[level].flips.size()) break;
        pos[level] = 0;
        if (level == 0) { level = nG + 1; break; }
      }
      if (level == nG + 1 || nG == 0) break;
      for (std::size_t l = level; l < nG; ++l) apply(l);
    }

    result.wallSeconds = elapsed();
    if (!haveBest) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    result.values = std::move(best);
    result.objective = bestObj;
    if (timedOut) {
      result.status = SolveStatus::TimeLimit;
      const double bound = trivialBound();
      result.gap = std::isfinite(bound) ? std::max(0.0, bound - bestObj) / std::max(std::abs(bestObj), 1e-10)
                                        : kInfinity;
    } else {
      result.status = SolveStatus::Optimal;
      result.gap = 0.0;
    }
    return result;
  }
};

} // namespace

MilpSolution solveByEnumeration(const MilpModel& model, const SolveLimits& limits) {
  model.validate();
  Engine engine(model, limits);
  return engine.run();
}

} // namespace locus
