#include "locus/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "locus/errors.hpp"

namespace locus {

const char* toString(Formulation f) noexcept {
  switch (f) {
    case Formulation::Basic: return "BASIC";
    case Formulation::McCormick: return "MC";
    case Formulation::QtlaSub: return "QTLA_SUB";
  }
  return "?";
}

std::optional<Formulation> formulationFromString(const std::string& text) {
  if (text == "BASIC") return Formulation::Basic;
  if (text == "MC") return Formulation::McCormick;
  if (text == "QTLA_SUB") return Formulation::QtlaSub;
  return std::nullopt;
}

const char* toString(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Optimal: return "OPTIMAL";
    case SolveStatus::Feasible: return "FEASIBLE";
    case SolveStatus::Infeasible: return "INFEASIBLE";
    case SolveStatus::TimeLimit: return "TIME_LIMIT";
  }
  return "?";
}

std::optional<SolveStatus> solveStatusFromString(const std::string& text) {
  if (text == "OPTIMAL") return SolveStatus::Optimal;
  if (text == "FEASIBLE") return SolveStatus::Feasible;
  if (text == "INFEASIBLE") return SolveStatus::Infeasible;
  if (text == "TIME_LIMIT") return SolveStatus::TimeLimit;
  return std::nullopt;
}

MilpModel::MilpModel(Formulation formulation, std::uint64_t instanceHash)
    : formulation_(formulation), hash_(instanceHash) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%016llx", toString(formulation),
                static_cast<unsigned long long>(instanceHash));
  name_ = buf;
}

void MilpModel::setName(std::string name) {
  name_ = std::move(name);
  formulation_.reset();
  hash_ = 0;
  const auto cut = name_.rfind('_');
  if (cut == std::string::npos) return;
  const auto tag = formulationFromString(name_.substr(0, cut));
  const std::string hex = name_.substr(cut + 1);
  if (!tag || hex.size() != 16) return;
  char* end = nullptr;
  const auto value = std::strtoull(hex.c_str(), &end, 16);
  if (end != hex.c_str() + hex.size()) return;
  formulation_ = tag;
  hash_ = value;
}

std::size_t MilpModel::addVariable(std::string name, VarKind kind, double lower, double upper) {
  vars_.push_back(Variable{std::move(name), kind, lower, upper});
  obj_.push_back(0.0);
  return vars_.size() - 1;
}

std::size_t MilpModel::addRow(std::string name, std::vector<Term> terms, RowSense sense, double rhs) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  rows_.push_back(Row{std::move(name), std::move(merged), sense, rhs});
  return rows_.size() - 1;
}

void MilpModel::addObjective(std::size_t var, double coef) {
  if (var >= obj_.size()) throw ValidationError("objective references unknown variable");
  obj_[var] += coef;
}

std::optional<std::size_t> MilpModel::findVariable(const std::string& name) const {
  for (std::size_t v = 0; v < vars_.size(); ++v)
    if (vars_[v].name == name) return v;
  return std::nullopt;
}

void MilpModel::validate() const {
  for (const auto& v : vars_) {
    if (v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw ValidationError("binary variable " + v.name + " has bounds outside [0,1]");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ValidationError("variable " + v.name + " has inconsistent bounds");
    }
  }
  for (double c : obj_)
    if (!std::isfinite(c)) throw ValidationError("non-finite objective coefficient");
  for (const auto& r : rows_) {
    if (!std::isfinite(r.rhs)) throw ValidationError("row " + r.name + " has non-finite rhs");
    for (const auto& t : r.terms) {
      if (t.var >= vars_.size()) throw ValidationError("row " + r.name + " references unknown variable");
      if (!std::isfinite(t.coef)) throw ValidationError("row " + r.name + " has non-finite coefficient");
    }
  }
}

double MilpModel::objectiveValue(const std::vector<double>& values) const {
  double total = 0.0;
  for (std::size_t v = 0; v < obj_.size(); ++v) total += obj_[v] * values[v];
  return total;
}

double MilpModel::rowActivity(std::size_t row, const std::vector<double>& values) const {
  double total = 0.0;
  for (const auto& t : rows_[row].terms) total += t.coef * values[t.var];
  return total;
}

} // namespace locus
