#include "locus/backend.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locus/errors.hpp"

namespace locus {

MilpSolution solve(const MilpModel& model, const Backend& backend, const SolveLimits& limits) {
  switch (backend.kind) {
    case BackendKind::Enumeration:
      return solveByEnumeration(model, limits);
    case BackendKind::External:
      return solveExternal(model, backend.command, limits);
  }
  throw ConfigError("unknown backend");
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parseNumber(const std::string& tok) {
  if (tok == "inf" || tok == "+inf") return kInfinity;
  if (tok == "-inf") return -kInfinity;
  double v = 0.0;
  const char* begin = tok.data();
  if (!tok.empty() && tok[0] == '+') ++begin;
  const auto res = std::from_chars(begin, tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("solution file: bad number '" + tok + "'");
  }
  return v;
}

SolveStatus statusFrom(const std::string& text) {
  auto s = solveStatusFromString(text);
  if (!s) throw ParseError("solution file: unknown status '" + text + "'");
  return *s;
}

struct Partial {
  std::optional<SolveStatus> status;
  std::optional<double> objective;
  std::optional<double> gap;
  std::vector<std::pair<std::string, double>> values;
};

Partial parseText(const std::string& text) {
  Partial p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key) || key[0] == '#') continue;
    if (!(ls >> value)) throw ParseError("solution file: missing value for '" + key + "'");
    if (key == "@status") p.status = statusFrom(value);
    else if (key == "@objective") p.objective = parseNumber(value);
    else if (key == "@gap") p.gap = parseNumber(value);
    else p.values.emplace_back(key, parseNumber(value));
  }
  return p;
}

Partial parseJson(const std::string& text) {
  Partial p;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("solution file: JSON must be an object");
  const nlohmann::json* values = &doc;
  if (doc.contains("values")) {
    values = &doc["values"];
    if (doc.contains("status")) p.status = statusFrom(doc["status"].get<std::string>());
    if (doc.contains("objective")) p.objective = doc["objective"].get<double>();
    if (doc.contains("gap")) p.gap = doc["gap"].get<double>();
  }
  if (!values->is_object()) throw ParseError("solution file: values must be an object");
  for (const auto& [k, v] : values->items()) {
    if (!v.is_number()) throw ParseError("solution file: value of '" + k + "' is not a number");
    p.values.emplace_back(k, v.get<double>());
  }
  return p;
}

} // namespace

std::string dumpSolutionFile(const MilpModel& model, const MilpSolution& solution) {
  std::ostringstream os;
  os << "@status " << toString(solution.status) << "\n";
  if (solution.hasAssignment()) {
    os << "@objective " << number(solution.objective) << "\n";
    os << "@gap " << number(solution.gap) << "\n";
    const auto& vars = model.variables();
    for (std::size_t v = 0; v < vars.size(); ++v) os << vars[v].name << " " << number(solution.values[v]) << "\n";
  }
  return os.str();
}

MilpSolution parseSolutionFile(const MilpModel& model, const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  const Partial p = (first != std::string::npos && text[first] == '{') ? parseJson(text) : parseText(text);

  MilpSolution out;
  if (!p.values.empty()) {
    out.values.assign(model.variables().size(), 0.0);
    for (const auto& [name, value] : p.values) {
      const auto idx = model.findVariable(name);
      if (!idx) throw ParseError("solution file: unknown variable '" + name + "'");
      out.values[*idx] = value;
    }
    out.objective = p.objective ? *p.objective : model.objectiveValue(out.values);
  }
  if (p.status) {
    out.status = *p.status;
  } else {
    out.status = out.hasAssignment() ? SolveStatus::Feasible : SolveStatus::Infeasible;
  }
  if (out.status == SolveStatus::Optimal) out.gap = 0.0;
  else if (p.gap) out.gap = *p.gap;
  else out.gap = out.hasAssignment() ? kInfinity : 0.0;
  if ((out.status == SolveStatus::Optimal || out.status == SolveStatus::Feasible) && !out.hasAssignment()) {
    throw ParseError("solution file: status " + std::string(toString(out.status)) + " without values");
  }
  return out;
}

} // namespace locus
