#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "locus/instance.hpp"

namespace locus {

/// Parses the instance JSON document. Demands are normalized to shares; if a
/// scalar "alpha" is present the weight matrices are recomputed as
/// exp(-alpha * distance). Throws ParseError on malformed JSON and
/// ValidationError when the result violates an invariant.
Instance parseInstance(const std::string& json);
Instance loadInstance(const std::filesystem::path& path);

/// Serializes with explicit weight matrices; `alpha` is emitted only when set.
std::string dumpInstance(const Instance& instance, const double* alpha = nullptr);
void saveInstance(const Instance& instance, const std::filesystem::path& path,
                  const double* alpha = nullptr);

/// FNV-1a over the canonical serialization; stable across runs.
std::uint64_t instanceHash(const Instance& instance);

/// {"x": [open locker ids], "r_closed": [closed station ids], "C": value}
std::string dumpSolution(const Instance& instance, const Solution& sol, double serviceLevel);
/// Reads a solution document back; unknown ids are a ParseError.
Solution parseSolution(const Instance& instance, const std::string& json, double* serviceLevel = nullptr);

/// Writes through a temporary file in the same directory and renames it.
void writeFileAtomic(const std::filesystem::path& path, const std::string& contents);
std::string readFile(const std::filesystem::path& path);

} // namespace locus
