#pragma once

#include <cstddef>
#include <string>

#include "locus/milp_model.hpp"

namespace locus {

struct SolveLimits {
  double timeLimitSeconds = kInfinity;
  double gapTolerance = 0.0;
  /// ENUMERATION refuses models with more binaries than this.
  std::size_t maxBinaries = 26;
};

enum class BackendKind { Enumeration, External };

struct Backend {
  BackendKind kind = BackendKind::Enumeration;
  /// EXTERNAL only: command template. {mps}, {sol} and {timelimit} are
  /// replaced by the model path, the expected solution path and the limit
  /// in seconds.
  std::string command;
};

/// Environment variable holding the default external command template.
inline constexpr const char* kSolverCmdEnv = "LOCUS_SOLVER_CMD";

MilpSolution solve(const MilpModel& model, const Backend& backend, const SolveLimits& limits = {});

/// Exhaustive search over binary assignments that satisfy the model's
/// cardinality rows. Continuous variables are completed in closed form
/// (z, products from the normalization rows; beta from its cut rows), and
/// every row is then checked at the completed point. Ties go to the
/// lexicographically smallest (lockers, stations) vector. Throws
/// EnumerationTooLarge above limits.maxBinaries or if the binary-only rows
/// are not plain cardinality rows.
MilpSolution solveByEnumeration(const MilpModel& model, const SolveLimits& limits = {});

/// Writes the model as MPS into a private temp directory, runs the command,
/// and reads the solution file back. Throws ExternalSolverFailure.
MilpSolution solveExternal(const MilpModel& model, const std::string& commandTemplate,
                           const SolveLimits& limits = {});

/// Solution file, text layout: one "name value" pair per line plus the
/// optional keys @status, @objective and @gap.
std::string dumpSolutionFile(const MilpModel& model, const MilpSolution& solution);

/// Accepts the text layout above or a JSON object, either a flat
/// {"name": value} map or {"status":..., "objective":..., "gap":...,
/// "values": {...}}. Variables missing from the file are 0. Without an
/// explicit objective it is recomputed from the values.
MilpSolution parseSolutionFile(const MilpModel& model, const std::string& text);

} // namespace locus
