#pragma once

#include <string>

#include "locus/milp_model.hpp"

namespace locus {

/// Free-format MPS. Sections NAME, OBJSENSE (MAX), ROWS, COLUMNS (binaries
/// wrapped in INTORG/INTEND markers), RHS, BOUNDS, ENDATA. Variables and rows
/// appear in declaration order and numbers use the shortest round-trip
/// representation, so export(parse(export(m))) == export(m) byte for byte.
std::string exportMps(const MilpModel& model);

/// Reads what exportMps writes, plus the common free-format variants
/// (OBJSENSE on the NAME-less line, MIN/MAX spellings, LO/UP/FX/FR/MI/PL/BV
/// bounds). RANGES are rejected. Throws ParseError.
MilpModel parseMps(const std::string& text);

} // namespace locus
