#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "locus/backend.hpp"
#include "locus/errors.hpp"
#include "locus/instance_io.hpp"
#include "locus/mps.hpp"

namespace locus {

namespace fs = std::filesystem;

namespace {

std::string shellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

void replaceAll(std::string& text, const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
}

// Removes the scratch directory on every exit path.
struct ScratchDir {
  fs::path path;
  ScratchDir() {
    std::random_device rd;
    std::ostringstream name;
    name << "locus-" << std::hex << ((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

} // namespace

MilpSolution solveExternal(const MilpModel& model, const std::string& commandTemplate,
                           const SolveLimits& limits) {
  if (commandTemplate.empty()) throw ExternalSolverFailure("no external solver command configured");
  model.validate();
  ScratchDir scratch;
  const fs::path mpsPath = scratch.path / "model.mps";
  const fs::path solPath = scratch.path / "model.sol";
  writeFileAtomic(mpsPath, exportMps(model));

  std::string cmd = commandTemplate;
  replaceAll(cmd, "{mps}", shellQuote(mpsPath.string()));
  replaceAll(cmd, "{sol}", shellQuote(solPath.string()));
  std::ostringstream limit;
  if (std::isfinite(limits.timeLimitSeconds)) limit << limits.timeLimitSeconds;
  else limit << 1e9;
  replaceAll(cmd, "{timelimit}", limit.str());

  const auto start = std::chrono::steady_clock::now();
  const int rc = std::system(cmd.c_str());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rc == -1) throw ExternalSolverFailure("could not launch external solver");
  if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
    throw ExternalSolverFailure("external solver exited with status " +
                                std::to_string(WIFEXITED(rc) ? WEXITSTATUS(rc) : -1) + ": " + cmd);
  }
  if (!fs::exists(solPath)) throw ExternalSolverFailure("external solver wrote no solution file");

  MilpSolution sol;
  try {
    sol = parseSolutionFile(model, readFile(solPath));
  } catch (const ParseError& e) {
    throw ExternalSolverFailure(std::string("unparsable solver output: ") + e.what());
  }
  sol.wallSeconds = wall;
  return sol;
}

} // namespace locus
