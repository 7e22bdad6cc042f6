#include "locus/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "locus/errors.hpp"

namespace locus {

using nlohmann::json;

namespace {

Matrix readMatrix(const json& doc, const char* key, std::size_t rows) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const auto nested = doc.at(key).get<std::vector<std::vector<double>>>();
  if (nested.size() != rows) {
    throw ValidationError(std::string(key) + " has " + std::to_string(nested.size()) +
                          " rows, expected " + std::to_string(rows));
  }
  return Matrix::fromRows(nested);
}

// Zero-column matrices keep their row count so shapes survive a round trip.
Matrix shaped(Matrix m, std::size_t rows, std::size_t cols) {
  if (m.rows() == rows && m.cols() == cols) return m;
  if (cols == 0) return Matrix(rows, 0);
  return m;
}

std::vector<std::string> readIds(const json& doc, const char* key) {
  std::vector<std::string> ids;
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  for (const auto& item : doc.at(key)) {
    const auto& id = item.at("id");
    ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
  }
  return ids;
}

json matrixJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  return rows;
}

} // namespace

Instance parseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }

  Instance in;
  try {
    in.zoneIds = readIds(doc, "zones");
    in.stationIds = readIds(doc, "stations");
    in.lockerIds = readIds(doc, "lockers");
    for (const auto& z : doc.at("zones")) in.demand.push_back(z.at("d").get<double>());

    const std::size_t nI = in.zoneIds.size();
    in.stationDist = shaped(readMatrix(doc, "distStation", nI), nI, in.stationIds.size());
    in.lockerDist = shaped(readMatrix(doc, "distLocker", nI), nI, in.lockerIds.size());
    in.stationService = shaped(readMatrix(doc, "aStation", nI), nI, in.stationIds.size());
    in.lockerService = shaped(readMatrix(doc, "aLocker", nI), nI, in.lockerIds.size());

    in.budget = doc.at("P").get<int>();
    in.mode = cardinalityModeFromString(doc.value("mode", std::string("AT_MOST")));
    in.lockerCapActive = doc.value("lockerCapActive", true);

    if (doc.contains("alpha")) {
      applyDistanceDecay(in, doc.at("alpha").get<double>());
    } else {
      in.stationWeight = shaped(readMatrix(doc, "thetaStation", nI), nI, in.stationIds.size());
      in.lockerWeight = shaped(readMatrix(doc, "thetaLocker", nI), nI, in.lockerIds.size());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }

  normalizeDemand(in);
  requireValid(in);
  return in;
}

Instance loadInstance(const std::filesystem::path& path) {
  return parseInstance(readFile(path));
}

std::string dumpInstance(const Instance& in, const double* alpha) {
  json doc;
  json zones = json::array();
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    zones.push_back({{"id", in.zoneIds[i]}, {"d", in.demand[i]}});
  }
  json stations = json::array();
  for (const auto& id : in.stationIds) stations.push_back({{"id", id}});
  json lockers = json::array();
  for (const auto& id : in.lockerIds) lockers.push_back({{"id", id}});

  doc["zones"] = std::move(zones);
  doc["stations"] = std::move(stations);
  doc["lockers"] = std::move(lockers);
  doc["distStation"] = matrixJson(in.stationDist);
  doc["distLocker"] = matrixJson(in.lockerDist);
  doc["aStation"] = matrixJson(in.stationService);
  doc["aLocker"] = matrixJson(in.lockerService);
  doc["thetaStation"] = matrixJson(in.stationWeight);
  doc["thetaLocker"] = matrixJson(in.lockerWeight);
  doc["P"] = in.budget;
  doc["mode"] = toString(in.mode);
  doc["lockerCapActive"] = in.lockerCapActive;
  if (alpha) doc["alpha"] = *alpha;
  return doc.dump(1);
}

void saveInstance(const Instance& instance, const std::filesystem::path& path, const double* alpha) {
  writeFileAtomic(path, dumpInstance(instance, alpha) + "\n");
}

std::uint64_t instanceHash(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dumpInstance(instance)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string dumpSolution(const Instance& in, const Solution& sol, double serviceLevel) {
  json doc;
  json open = json::array();
  for (std::size_t j = 0; j < in.numLockers(); ++j)
    if (sol.lockerOpen[j]) open.push_back(in.lockerIds[j]);
  json closed = json::array();
  for (std::size_t k = 0; k < in.numStations(); ++k)
    if (!sol.stationKept[k]) closed.push_back(in.stationIds[k]);
  doc["x"] = std::move(open);
  doc["r_closed"] = std::move(closed);
  doc["C"] = serviceLevel;
  return doc.dump(1);
}

Solution parseSolution(const Instance& in, const std::string& text, double* serviceLevel) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  std::map<std::string, std::size_t> lockerIndex;
  std::map<std::string, std::size_t> stationIndex;
  for (std::size_t j = 0; j < in.numLockers(); ++j) lockerIndex[in.lockerIds[j]] = j;
  for (std::size_t k = 0; k < in.numStations(); ++k) stationIndex[in.stationIds[k]] = k;

  Solution sol = statusQuo(in);
  try {
    for (const auto& id : doc.at("x")) {
      const auto it = lockerIndex.find(id.get<std::string>());
      if (it == lockerIndex.end()) throw ParseError("unknown locker id in solution: " + id.dump());
      sol.lockerOpen[it->second] = 1;
    }
    for (const auto& id : doc.at("r_closed")) {
      const auto it = stationIndex.find(id.get<std::string>());
      if (it == stationIndex.end()) throw ParseError("unknown station id in solution: " + id.dump());
      sol.stationKept[it->second] = 0;
    }
    if (serviceLevel) *serviceLevel = doc.value("C", 0.0);
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  return sol;
}

void writeFileAtomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace locus
