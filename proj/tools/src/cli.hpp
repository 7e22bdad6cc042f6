#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locus/instance.hpp"

namespace locus::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kSolverFailure = 2,
  kSizeCap = 3,
};

/// Entry point of the `locus` tool; returns the process exit code.
int run(int argc, char** argv);
/// Same, with output captured (used by tests).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Maps the library's exception hierarchy onto exit codes.
int exitCodeFor(const std::exception& e);

/// "0.4:1.0:0.1" (inclusive range) or "0.4,0.5,0.9".
std::vector<double> parseGrid(const std::string& text);
std::vector<int> parseIntGrid(const std::string& text);

struct SizeSpec {
  std::size_t zones, stations, lockers;
};
/// "50/25/25,100/50/50": zones/stations/lockers.
std::vector<SizeSpec> parseSizes(const std::string& text);

std::string percent(double fraction);

struct BenchConfig {
  std::vector<SizeSpec> sizes;
  std::vector<double> alphas;
  std::vector<int> budgets;
  std::vector<std::string> methods;  ///< subset of oracle, milp, milp+mc, qtla, qtla+pso
  CardinalityMode mode = CardinalityMode::AtMost;
  double timeLimit = 3600.0;
  std::size_t replications = 10;
  std::size_t particles = 50;
  std::size_t iterations = 2000;
  std::size_t maxBinaries = 26;
  std::string solverCmd;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// Runs the grid and returns the CSV text. If `path` is nonempty the file
/// is rewritten atomically after every finished cell.
std::string runBench(const BenchConfig& config, const std::string& path);

} // namespace locus::cli
