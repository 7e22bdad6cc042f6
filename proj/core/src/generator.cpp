#include "locus/generator.hpp"

#include <cmath>
#include <string>

#include "locus/errors.hpp"
#include "locus/rng.hpp"

namespace locus {

ServiceTable defaultServiceTable() { return {{1.0, 2.0, 3.0}, {1.0, 0.5, 0.2}, 0.0}; }

ServiceTable caseStudyServiceTable() { return {{1.0, 1.5, 2.0}, {1.0, 0.5, 0.2}, 0.0}; }

double stepwiseService(double distance, const ServiceTable& table) {
  for (std::size_t e = 0; e < table.thresholds.size(); ++e) {
    if (distance <= table.thresholds[e]) return table.values[e];
  }
  return table.beyond;
}

void validateSpec(const GenSpec& spec) {
  if (spec.zones < 1 || spec.stations < 1) throw ConfigError("need at least one zone and one station");
  if (spec.budget < 0) throw ConfigError("budget must be nonnegative");
  if (static_cast<std::size_t>(spec.budget) > std::max(spec.lockers, spec.stations)) {
    throw ConfigError("budget exceeds both facility counts");
  }
  if (!(spec.boxSide > 0.0) || !(spec.distanceUnit > 0.0)) throw ConfigError("box side and unit must be positive");
  if (!(spec.demandLow >= 0.0) || !(spec.demandHigh >= spec.demandLow)) throw ConfigError("bad demand range");
  if (!std::isfinite(spec.alpha) || spec.alpha < 0.0) throw ConfigError("alpha must be finite and nonnegative");
  const auto& t = spec.service;
  if (t.thresholds.size() != t.values.size()) throw ConfigError("service table: thresholds and values differ in length");
  double prev = 2.0;
  for (std::size_t e = 0; e < t.values.size(); ++e) {
    if (e > 0 && !(t.thresholds[e] > t.thresholds[e - 1])) throw ConfigError("service table: thresholds must increase");
    if (t.values[e] < 0.0 || t.values[e] > 1.0 || t.values[e] > prev) {
      throw ConfigError("service table: values must lie in [0,1] and not increase");
    }
    prev = t.values[e];
  }
  if (t.beyond < 0.0 || t.beyond > prev) throw ConfigError("service table: tail value must not exceed the last level");
}

namespace {

struct Point {
  double x;
  double y;
};

std::vector<Point> points(std::size_t n, double side, Rng rng) {
  std::vector<Point> out(n);
  for (auto& p : out) {
    p.x = uniform(rng, 0.0, side);
    p.y = uniform(rng, 0.0, side);
  }
  return out;
}

std::vector<std::string> ids(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

enum Stream : std::uint64_t { ZonePoints = 0, StationPoints = 1, LockerPoints = 2, Demands = 3 };

} // namespace

Instance generate(const GenSpec& spec) {
  validateSpec(spec);
  const auto zones = points(spec.zones, spec.boxSide, makeRng(spec.seed, ZonePoints));
  const auto stations = points(spec.stations, spec.boxSide, makeRng(spec.seed, StationPoints));
  const auto lockers = points(spec.lockers, spec.boxSide, makeRng(spec.seed, LockerPoints));

  Instance inst;
  inst.zoneIds = ids('z', spec.zones);
  inst.stationIds = ids('s', spec.stations);
  inst.lockerIds = ids('l', spec.lockers);
  inst.budget = spec.budget;
  inst.mode = spec.mode;
  inst.lockerCapActive = spec.lockerCapActive;

  Rng demandRng = makeRng(spec.seed, Demands);
  inst.demand.resize(spec.zones);
  for (auto& d : inst.demand) d = uniform(demandRng, spec.demandLow, spec.demandHigh);
  normalizeDemand(inst);

  const auto fill = [&](const std::vector<Point>& facilities, Matrix& dist, Matrix& service) {
    dist = Matrix(spec.zones, facilities.size(), 0.0);
    service = Matrix(spec.zones, facilities.size(), 0.0);
    for (std::size_t i = 0; i < spec.zones; ++i) {
      for (std::size_t f = 0; f < facilities.size(); ++f) {
        const double l = std::hypot(zones[i].x - facilities[f].x, zones[i].y - facilities[f].y) / spec.distanceUnit;
        dist(i, f) = l;
        service(i, f) = stepwiseService(l, spec.service);
      }
    }
  };
  fill(stations, inst.stationDist, inst.stationService);
  fill(lockers, inst.lockerDist, inst.lockerService);
  applyDistanceDecay(inst, spec.alpha);
  requireValid(inst);
  return inst;
}

} // namespace locus
