#include "locus/mps.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "locus/errors.hpp"

namespace locus {

namespace {

std::string number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

char senseCode(RowSense s) {
  switch (s) {
    case RowSense::LessEqual: return 'L';
    case RowSense::Equal: return 'E';
    case RowSense::GreaterEqual: return 'G';
  }
  return 'L';
}

constexpr const char* kObjRow = "obj";

} // namespace

std::string exportMps(const MilpModel& model) {
  const auto& vars = model.variables();
  const auto& rows = model.rows();
  const auto& obj = model.objective();

  // Column-major view of the row terms.
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& t : rows[r].terms) columns[t.var].emplace_back(r, t.coef);

  std::ostringstream os;
  os << "NAME " << model.name() << "\n";
  os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n";
  os << " N  " << kObjRow << "\n";
  for (const auto& r : rows) os << " " << senseCode(r.sense) << "  " << r.name << "\n";

  os << "COLUMNS\n";
  bool inInt = false;
  int marker = 0;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const bool isInt = vars[v].kind == VarKind::Binary;
    if (isInt != inInt) {
      os << "    M" << marker++ << "  'MARKER'  " << (isInt ? "'INTORG'" : "'INTEND'") << "\n";
      inInt = isInt;
    }
    const auto& name = vars[v].name;
    if (obj[v] != 0.0) os << "    " << name << "  " << kObjRow << "  " << number(obj[v]) << "\n";
    for (const auto& [r, c] : columns[v]) os << "    " << name << "  " << rows[r].name << "  " << number(c) << "\n";
    if (obj[v] == 0.0 && columns[v].empty()) os << "    " << name << "  " << kObjRow << "  0\n";
  }
  if (inInt) os << "    M" << marker++ << "  'MARKER'  'INTEND'\n";

  os << "RHS\n";
  for (const auto& r : rows)
    if (r.rhs != 0.0) os << "    RHS  " << r.name << "  " << number(r.rhs) << "\n";

  os << "BOUNDS\n";
  for (const auto& v : vars) {
    if (v.kind == VarKind::Binary) {
      if (v.lower == 0.0 && v.upper == 1.0) {
        os << " BV BND  " << v.name << "\n";
      } else {
        os << " LO BND  " << v.name << "  " << number(v.lower) << "\n";
        os << " UP BND  " << v.name << "  " << number(v.upper) << "\n";
      }
      continue;
    }
    if (v.lower == v.upper) {
      os << " FX BND  " << v.name << "  " << number(v.lower) << "\n";
    } else if (v.lower == -kInfinity && v.upper == kInfinity) {
      os << " FR BND  " << v.name << "\n";
    } else {
      if (v.lower == -kInfinity) {
        os << " MI BND  " << v.name << "\n";
      } else if (v.lower != 0.0) {
        os << " LO BND  " << v.name << "  " << number(v.lower) << "\n";
      }
      if (v.upper != kInfinity) os << " UP BND  " << v.name << "  " << number(v.upper) << "\n";
    }
  }
  os << "ENDATA\n";
  return os.str();
}

namespace {

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parseNumber(const std::string& tok, std::size_t lineNo) {
  if (tok == "inf" || tok == "+inf" || tok == "Infinity" || tok == "1e+30" || tok == "1e30") return kInfinity;
  if (tok == "-inf" || tok == "-Infinity" || tok == "-1e+30" || tok == "-1e30") return -kInfinity;
  double v = 0.0;
  const char* begin = tok.data();
  if (!tok.empty() && tok[0] == '+') ++begin;
  const auto res = std::from_chars(begin, tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("MPS line " + std::to_string(lineNo) + ": bad number '" + tok + "'");
  }
  return v;
}

struct ParsedVar {
  std::string name;
  bool integer = false;
  double lower = 0.0;
  double upper = kInfinity;
  bool boundsSeen = false;
  double obj = 0.0;
};

struct ParsedRow {
  std::string name;
  RowSense sense;
  std::vector<Term> terms;
  double rhs = 0.0;
};

} // namespace

MilpModel parseMps(const std::string& text) {
  std::string modelName = "model";
  bool minimize = false;
  std::string objName;
  std::vector<ParsedRow> rows;
  std::unordered_map<std::string, std::size_t> rowIndex;
  std::vector<ParsedVar> vars;
  std::unordered_map<std::string, std::size_t> varIndex;
  bool integerSection = false;

  const auto fail = [](std::size_t lineNo, const std::string& msg) -> ParseError {
    return ParseError("MPS line " + std::to_string(lineNo) + ": " + msg);
  };

  const auto varFor = [&](const std::string& name) -> std::size_t {
    const auto it = varIndex.find(name);
    if (it != varIndex.end()) return it->second;
    vars.push_back(ParsedVar{name, integerSection});
    varIndex.emplace(name, vars.size() - 1);
    return vars.size() - 1;
  };

  Section section = Section::None;
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const std::string& head = tok[0];
      if (head == "NAME") {
        section = Section::Name;
        if (tok.size() > 1) modelName = tok[1];
      } else if (head == "OBJSENSE") {
        section = Section::ObjSense;
        if (tok.size() > 1) minimize = tok[1].rfind("MIN", 0) == 0;
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "RANGES") {
        throw fail(lineNo, "RANGES are not supported");
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "ENDATA") {
        section = Section::End;
        break;
      } else {
        throw fail(lineNo, "unknown section '" + head + "'");
      }
      continue;
    }

    switch (section) {
      case Section::ObjSense:
        minimize = tok[0].rfind("MIN", 0) == 0;
        break;
      case Section::Rows: {
        if (tok.size() != 2) throw fail(lineNo, "ROWS entry needs a type and a name");
        const std::string& type = tok[0];
        if (type == "N") {
          if (objName.empty()) objName = tok[1];
          break;
        }
        RowSense sense;
        if (type == "L") sense = RowSense::LessEqual;
        else if (type == "E") sense = RowSense::Equal;
        else if (type == "G") sense = RowSense::GreaterEqual;
        else throw fail(lineNo, "unknown row type '" + type + "'");
        if (rowIndex.count(tok[1])) throw fail(lineNo, "duplicate row '" + tok[1] + "'");
        rowIndex.emplace(tok[1], rows.size());
        rows.push_back(ParsedRow{tok[1], sense, {}, 0.0});
        break;
      }
      case Section::Columns: {
        if (tok.size() == 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") integerSection = true;
          else if (tok[2] == "'INTEND'") integerSection = false;
          else throw fail(lineNo, "unknown marker " + tok[2]);
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) throw fail(lineNo, "COLUMNS entry has wrong arity");
        const std::size_t v = varFor(tok[0]);
        for (std::size_t p = 1; p + 1 < tok.size(); p += 2) {
          const double coef = parseNumber(tok[p + 1], lineNo);
          if (tok[p] == objName) {
            vars[v].obj += coef;
            continue;
          }
          const auto it = rowIndex.find(tok[p]);
          if (it == rowIndex.end()) throw fail(lineNo, "unknown row '" + tok[p] + "'");
          if (coef != 0.0) rows[it->second].terms.push_back({v, coef});
        }
        break;
      }
      case Section::Rhs: {
        const std::size_t start = tok.size() % 2 == 1 ? 1 : 0;
        for (std::size_t p = start; p + 1 < tok.size(); p += 2) {
          const double value = parseNumber(tok[p + 1], lineNo);
          if (tok[p] == objName) {
            if (value != 0.0) throw fail(lineNo, "objective constants are not supported");
            continue;
          }
          const auto it = rowIndex.find(tok[p]);
          if (it == rowIndex.end()) throw fail(lineNo, "unknown row '" + tok[p] + "'");
          rows[it->second].rhs = value;
        }
        break;
      }
      case Section::Bounds: {
        const std::string& type = tok[0];
        const bool valueless = type == "BV" || type == "FR" || type == "MI" || type == "PL";
        std::string name;
        std::string valueTok;
        if (valueless) {
          if (tok.size() == 3) name = tok[2];
          else if (tok.size() == 2) name = tok[1];
          else throw fail(lineNo, "bad BOUNDS entry");
        } else {
          if (tok.size() == 4) { name = tok[2]; valueTok = tok[3]; }
          else if (tok.size() == 3) { name = tok[1]; valueTok = tok[2]; }
          else throw fail(lineNo, "bad BOUNDS entry");
        }
        const auto it = varIndex.find(name);
        if (it == varIndex.end()) throw fail(lineNo, "bound on unknown column '" + name + "'");
        auto& v = vars[it->second];
        v.boundsSeen = true;
        if (type == "BV") { v.integer = true; v.lower = 0.0; v.upper = 1.0; }
        else if (type == "FR") { v.lower = -kInfinity; v.upper = kInfinity; }
        else if (type == "MI") { v.lower = -kInfinity; }
        else if (type == "PL") { v.upper = kInfinity; }
        else if (type == "LO") { v.lower = parseNumber(valueTok, lineNo); }
        else if (type == "UP") { v.upper = parseNumber(valueTok, lineNo); }
        else if (type == "FX") { v.lower = v.upper = parseNumber(valueTok, lineNo); }
        else throw fail(lineNo, "unsupported bound type '" + type + "'");
        break;
      }
      case Section::Name:
      case Section::None:
      case Section::Ranges:
      case Section::End:
        throw fail(lineNo, "data outside a section");
    }
  }
  if (section != Section::End) throw ParseError("MPS text lacks ENDATA");

  MilpModel model;
  model.setName(modelName);
  for (auto& v : vars) {
    if (v.integer) {
      // Integer columns without explicit bounds are read as binaries.
      if (!v.boundsSeen) v.upper = 1.0;
      if (v.lower < 0.0 || v.upper > 1.0) {
        throw ParseError("general integer column '" + v.name + "' is not supported");
      }
      model.addVariable(v.name, VarKind::Binary, v.lower, v.upper);
    } else {
      model.addVariable(v.name, VarKind::Continuous, v.lower, v.upper);
    }
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].obj != 0.0) model.addObjective(v, minimize ? -vars[v].obj : vars[v].obj);
  }
  for (auto& r : rows) model.addRow(r.name, std::move(r.terms), r.sense, r.rhs);
  model.validate();
  return model;
}

} // namespace locus
