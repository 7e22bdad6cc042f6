#include "locus/milp.hpp"

#include <charconv>
#include <cmath>

#include "locus/bounds.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/instance_io.hpp"

namespace locus {

namespace names {
std::string lockerOpen(std::size_t j) { return "x_" + std::to_string(j); }
std::string stationKept(std::size_t k) { return "r_" + std::to_string(k); }
std::string zoneInverse(std::size_t i) { return "z_" + std::to_string(i); }
std::string lockerProduct(std::size_t i, std::size_t j) {
  return "yl_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string stationProduct(std::size_t i, std::size_t k) {
  return "ys_" + std::to_string(i) + "_" + std::to_string(k);
}
std::string hypograph(std::size_t i) { return "beta_" + std::to_string(i); }
std::string normalizationRow(std::size_t i) { return "norm_" + std::to_string(i); }
} // namespace names

namespace {

// Parses "<prefix><a>" or "<prefix><a>_<b>"; returns false on mismatch.
bool parseIndexed(const std::string& name, const std::string& prefix, std::size_t count,
                  std::size_t* out) {
  if (name.compare(0, prefix.size(), prefix) != 0) return false;
  const char* p = name.data() + prefix.size();
  const char* end = name.data() + name.size();
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) {
      if (p == end || *p != '_') return false;
      ++p;
    }
    const auto res = std::from_chars(p, end, out[n]);
    if (res.ec != std::errc{} || res.ptr == p) return false;
    p = res.ptr;
  }
  return p == end;
}

void place(std::vector<std::size_t>& slots, std::size_t index, std::size_t var) {
  if (slots.size() <= index) slots.resize(index + 1, kNoIndex);
  slots[index] = var;
}

struct Pending {
  std::size_t var;
  std::size_t zone;
  std::size_t facility;
  bool locker;
};

} // namespace

ModelLayout ModelLayout::infer(const MilpModel& model) {
  ModelLayout layout;
  std::vector<Pending> pending;
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& n = vars[v].name;
    std::size_t idx[2];
    if (parseIndexed(n, "x_", 1, idx)) {
      place(layout.lockerVar, idx[0], v);
    } else if (parseIndexed(n, "r_", 1, idx)) {
      place(layout.stationVar, idx[0], v);
    } else if (parseIndexed(n, "z_", 1, idx)) {
      place(layout.zoneVar, idx[0], v);
    } else if (parseIndexed(n, "beta_", 1, idx)) {
      place(layout.betaVar, idx[0], v);
    } else if (parseIndexed(n, "yl_", 2, idx)) {
      pending.push_back({v, idx[0], idx[1], true});
    } else if (parseIndexed(n, "ys_", 2, idx)) {
      pending.push_back({v, idx[0], idx[1], false});
    }
  }
  for (const auto& p : pending) {
    const auto& group = p.locker ? layout.lockerVar : layout.stationVar;
    if (p.facility >= group.size() || group[p.facility] == kNoIndex) {
      throw ValidationError("product variable " + vars[p.var].name + " has no matching binary");
    }
    layout.products.push_back({p.var, p.zone, group[p.facility]});
  }
  const auto& rows = model.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t idx[1];
    if (parseIndexed(rows[r].name, "norm_", 1, idx)) place(layout.normRow, idx[0], r);
  }
  return layout;
}

void addCardinalityRows(MilpModel& model, const Instance& in, const std::vector<std::size_t>& lockerVars,
                        const std::vector<std::size_t>& stationVars) {
  const RowSense sense = in.mode == CardinalityMode::Exact ? RowSense::Equal : RowSense::LessEqual;
  if (in.lockerCapActive) {
    std::vector<Term> terms;
    for (auto v : lockerVars) terms.push_back({v, 1.0});
    model.addRow(names::kLockerCapRow, std::move(terms), sense, static_cast<double>(in.budget));
  }
  // sum(1 - r_k) <= P  <=>  sum r_k >= |K| - P
  std::vector<Term> terms;
  for (auto v : stationVars) terms.push_back({v, 1.0});
  const RowSense kept = in.mode == CardinalityMode::Exact ? RowSense::Equal : RowSense::GreaterEqual;
  model.addRow(names::kStationCapRow, std::move(terms), kept,
               static_cast<double>(in.numStations()) - in.budget);
}

namespace {

struct CommonVars {
  std::vector<std::size_t> x, r, z;
  std::vector<std::vector<std::size_t>> yl, ys;  // [zone][facility]
};

// Variables, objective, normalization rows and budget rows shared by both
// exact formulations.
CommonVars addCommon(MilpModel& m, const Instance& in, const BoundSet& bounds) {
  const std::size_t nI = in.numZones(), nJ = in.numLockers(), nK = in.numStations();
  const Coefficients coef = deriveCoefficients(in);
  CommonVars v;
  for (std::size_t j = 0; j < nJ; ++j) v.x.push_back(m.addBinary(names::lockerOpen(j)));
  for (std::size_t k = 0; k < nK; ++k) v.r.push_back(m.addBinary(names::stationKept(k)));
  for (std::size_t i = 0; i < nI; ++i)
    v.z.push_back(m.addContinuous(names::zoneInverse(i), 0.0, bounds.zUpper(i)));
  v.yl.resize(nI);
  v.ys.resize(nI);
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t j = 0; j < nJ; ++j)
      v.yl[i].push_back(m.addContinuous(names::lockerProduct(i, j), 0.0, bounds.zUpper(i)));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t k = 0; k < nK; ++k)
      v.ys[i].push_back(m.addContinuous(names::stationProduct(i, k), 0.0, bounds.zUpper(i)));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t k = 0; k < nK; ++k) m.addObjective(v.ys[i][k], coef.station(i, k));
    for (std::size_t j = 0; j < nJ; ++j) m.addObjective(v.yl[i][j], coef.locker(i, j));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < nK; ++k) terms.push_back({v.ys[i][k], in.stationWeight(i, k)});
    for (std::size_t j = 0; j < nJ; ++j) terms.push_back({v.yl[i][j], in.lockerWeight(i, j)});
    m.addRow(names::normalizationRow(i), std::move(terms), RowSense::Equal, 1.0);
  }
  return v;
}

std::string tag(const char* prefix, std::size_t i, std::size_t f) {
  return std::string(prefix) + std::to_string(i) + "_" + std::to_string(f);
}

// product <= z, product >= z - U(1 - b), product <= U b.
void addBigU(MilpModel& m, const char* prefix, std::size_t i, std::size_t f, std::size_t product,
             std::size_t z, std::size_t binary, double U) {
  m.addRow(tag(prefix, i, f) + "_ge", {{z, 1.0}, {product, -1.0}, {binary, U}}, RowSense::LessEqual, U);
  m.addRow(tag(prefix, i, f) + "_le", {{product, 1.0}, {z, -1.0}}, RowSense::LessEqual, 0.0);
  m.addRow(tag(prefix, i, f) + "_on", {{product, 1.0}, {binary, -U}}, RowSense::LessEqual, 0.0);
}

// z - zU(1-b) <= product <= z - lowerIfZero(1-b);  lowerIfOne*b <= product <= upperIfOne*b.
void addMcCormick(MilpModel& m, const char* prefix, std::size_t i, std::size_t f, std::size_t product,
                  std::size_t z, std::size_t binary, double zU, double lowerIfZero,
                  double lowerIfOne, double upperIfOne) {
  m.addRow(tag(prefix, i, f) + "_a_lo", {{z, 1.0}, {product, -1.0}, {binary, zU}}, RowSense::LessEqual, zU);
  m.addRow(tag(prefix, i, f) + "_a_up", {{product, 1.0}, {z, -1.0}, {binary, -lowerIfZero}},
           RowSense::LessEqual, -lowerIfZero);
  m.addRow(tag(prefix, i, f) + "_b_lo", {{product, 1.0}, {binary, -lowerIfOne}}, RowSense::GreaterEqual, 0.0);
  m.addRow(tag(prefix, i, f) + "_b_up", {{product, 1.0}, {binary, -upperIfOne}}, RowSense::LessEqual, 0.0);
}

} // namespace

MilpModel buildBasic(const Instance& in) {
  requireValid(in);
  const BoundSet bounds = allBounds(in);
  MilpModel m(Formulation::Basic, instanceHash(in));
  const CommonVars v = addCommon(m, in, bounds);
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    const double U = bounds.zUpper(i);
    for (std::size_t j = 0; j < in.numLockers(); ++j) addBigU(m, "linkl_", i, j, v.yl[i][j], v.z[i], v.x[j], U);
    for (std::size_t k = 0; k < in.numStations(); ++k)
      addBigU(m, "links_", i, k, v.ys[i][k], v.z[i], v.r[k], U);
  }
  addCardinalityRows(m, in, v.x, v.r);
  m.validate();
  return m;
}

MilpModel buildStrengthened(const Instance& in) {
  requireValid(in);
  const BoundSet bounds = allBounds(in);
  MilpModel m(Formulation::McCormick, instanceHash(in));
  const CommonVars v = addCommon(m, in, bounds);
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    const double zU = bounds.zUpper(i);
    for (std::size_t j = 0; j < in.numLockers(); ++j) {
      const auto& b = bounds.locker(i, j);
      addMcCormick(m, "mcl_", i, j, v.yl[i][j], v.z[i], v.x[j], zU, b.lowerIfClosed, b.lowerIfOpen,
                   b.upperIfOpen);
    }
    for (std::size_t k = 0; k < in.numStations(); ++k) {
      const auto& b = bounds.station(i, k);
      addMcCormick(m, "mcs_", i, k, v.ys[i][k], v.z[i], v.r[k], zU, b.lowerIfClosed, b.lowerIfKept,
                   b.upperIfKept);
    }
  }
  addCardinalityRows(m, in, v.x, v.r);
  m.validate();
  return m;
}

Solution recoverSolution(const Instance& in, const MilpModel& model, const MilpSolution& ms) {
  if (!ms.hasAssignment()) throw Error("MILP solution carries no assignment");
  if (ms.values.size() != model.variables().size()) throw Error("assignment length does not match model");
  const ModelLayout layout = ModelLayout::infer(model);
  if (layout.lockerVar.size() > in.numLockers() || layout.stationVar.size() > in.numStations()) {
    throw ValidationError("model does not belong to this instance");
  }

  const auto roundBinary = [&](std::size_t var) -> std::uint8_t {
    const double v = ms.values[var];
    const double r = std::round(v);
    if (std::abs(v - r) >= kIntegralityTol || (r != 0.0 && r != 1.0)) {
      throw IntegralityViolation(model.variables()[var].name + " = " + std::to_string(v) +
                                 " is not integral");
    }
    return static_cast<std::uint8_t>(r);
  };

  Solution sol = statusQuo(in);
  for (std::size_t j = 0; j < in.numLockers(); ++j) {
    if (j >= layout.lockerVar.size() || layout.lockerVar[j] == kNoIndex)
      throw ValidationError("model lacks " + names::lockerOpen(j));
    sol.lockerOpen[j] = roundBinary(layout.lockerVar[j]);
  }
  for (std::size_t k = 0; k < in.numStations(); ++k) {
    if (k >= layout.stationVar.size() || layout.stationVar[k] == kNoIndex)
      throw ValidationError("model lacks " + names::stationKept(k));
    sol.stationKept[k] = roundBinary(layout.stationVar[k]);
  }

  const auto f = model.formulation();
  if (f == Formulation::Basic || f == Formulation::McCormick) {
    const double recomputed = serviceLevel(in, sol);
    if (std::abs(recomputed - ms.objective) > kObjectiveMatchTol) {
      throw ObjectiveMismatch("service level " + std::to_string(recomputed) +
                              " differs from MILP objective " + std::to_string(ms.objective));
    }
  }
  return sol;
}

} // namespace locus
