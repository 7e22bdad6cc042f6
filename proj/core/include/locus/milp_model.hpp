#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace locus {

enum class VarKind { Binary, Continuous };
enum class RowSense { LessEqual, Equal, GreaterEqual };

/// Which builder produced a model. Stored in the model name so it survives
/// an MPS round trip.
enum class Formulation { Basic, McCormick, QtlaSub };

const char* toString(Formulation f) noexcept;
std::optional<Formulation> formulationFromString(const std::string& text);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kInfinity;

  bool operator==(const Variable&) const = default;
};

struct Term {
  std::size_t var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Row {
  std::string name;
  std::vector<Term> terms;  ///< sorted by variable index, no zeros, no repeats
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;

  bool operator==(const Row&) const = default;
};

/// Solver-independent maximization MILP.
class MilpModel {
public:
  MilpModel() = default;
  MilpModel(Formulation formulation, std::uint64_t instanceHash);

  std::size_t addVariable(std::string name, VarKind kind, double lower, double upper);
  std::size_t addBinary(std::string name) { return addVariable(std::move(name), VarKind::Binary, 0.0, 1.0); }
  std::size_t addContinuous(std::string name, double lower = 0.0, double upper = kInfinity) {
    return addVariable(std::move(name), VarKind::Continuous, lower, upper);
  }

  /// Terms are canonicalized: merged per variable, zeros dropped, sorted.
  std::size_t addRow(std::string name, std::vector<Term> terms, RowSense sense, double rhs);

  /// Adds `coef` to the objective coefficient of `var`.
  void addObjective(std::size_t var, double coef);

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  /// Dense objective, one coefficient per variable.
  const std::vector<double>& objective() const noexcept { return obj_; }

  std::optional<std::size_t> findVariable(const std::string& name) const;

  /// Encodes formulation and instance hash, e.g. "MC_00ab...".
  const std::string& name() const noexcept { return name_; }
  void setName(std::string name);
  std::optional<Formulation> formulation() const noexcept { return formulation_; }
  std::uint64_t instanceHash() const noexcept { return hash_; }

  /// Throws ValidationError if any row references an unknown variable, a
  /// coefficient is non-finite, or a binary has bounds outside [0,1].
  void validate() const;

  double objectiveValue(const std::vector<double>& values) const;
  double rowActivity(std::size_t row, const std::vector<double>& values) const;

  bool operator==(const MilpModel&) const = default;

private:
  std::string name_ = "model";
  std::optional<Formulation> formulation_;
  std::uint64_t hash_ = 0;
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  std::vector<double> obj_;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

const char* toString(SolveStatus s) noexcept;
std::optional<SolveStatus> solveStatusFromString(const std::string& text);

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  ///< indexed like model.variables(); empty if none found
  double objective = 0.0;
  double gap = 0.0;  ///< relative MIP gap; zero when optimal
  double wallSeconds = 0.0;

  bool hasAssignment() const noexcept { return !values.empty(); }
};

} // namespace locus
