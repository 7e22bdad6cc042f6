#include "locus/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "locus/errors.hpp"

namespace locus {

BoundSet::BoundSet(std::size_t zones, std::size_t stations, std::size_t lockers)
    : nStations_(stations),
      nLockers_(lockers),
      zUpper_(zones, 0.0),
      locker_(zones * lockers),
      station_(zones * stations) {}

namespace {

// Sorted view of one zone's weights. Stations ascend, lockers descend; ties
// keep facility index order. prefix[n] is the sum of the first n entries.
struct ZoneOrder {
  std::vector<std::size_t> stationRank;  // facility -> position in ascending order
  std::vector<double> stationPrefix;
  std::vector<double> stationSorted;
  std::vector<std::size_t> lockerRank;  // facility -> position in descending order
  std::vector<double> lockerPrefix;
  std::vector<double> lockerSorted;
  double stationTotal = 0.0;

  ZoneOrder(const Instance& in, std::size_t i) {
    const auto ws = in.stationWeight.row(i);
    const auto wl = in.lockerWeight.row(i);
    build(ws, true, stationRank, stationSorted, stationPrefix);
    build(wl, false, lockerRank, lockerSorted, lockerPrefix);
    stationTotal = stationPrefix.back();
  }

  static void build(std::span<const double> w, bool ascending, std::vector<std::size_t>& rank,
                    std::vector<double>& sorted, std::vector<double>& prefix) {
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ascending ? w[a] < w[b] : w[a] > w[b];
    });
    rank.assign(w.size(), 0);
    sorted.resize(w.size());
    prefix.assign(w.size() + 1, 0.0);
    for (std::size_t p = 0; p < order.size(); ++p) {
      rank[order[p]] = p;
      sorted[p] = w[order[p]];
      prefix[p + 1] = prefix[p] + sorted[p];
    }
  }

  // Sum of the first `count` sorted entries, skipping facility `skip`.
  static double sumExcluding(const std::vector<double>& prefix, const std::vector<double>& sorted,
                             std::size_t skipRank, std::size_t count) {
    const std::size_t available = sorted.size() - 1;
    count = std::min(count, available);
    if (skipRank < count) return prefix[count + 1] - sorted[skipRank];
    return prefix[count];
  }

  double smallestStations(std::size_t count) const {
    return stationPrefix[std::min(count, stationSorted.size())];
  }
  double smallestStationsExcluding(std::size_t k, std::size_t count) const {
    return sumExcluding(stationPrefix, stationSorted, stationRank[k], count);
  }
  double largestLockers(std::size_t count) const {
    return lockerPrefix[std::min(count, lockerSorted.size())];
  }
  double largestLockersExcluding(std::size_t j, std::size_t count) const {
    return sumExcluding(lockerPrefix, lockerSorted, lockerRank[j], count);
  }
};

struct Budgets {
  std::size_t keepAtLeast;  // |K| - P
  std::size_t openAtMost;   // P, or |J| when the locker row is dropped
  std::size_t closeAtMost;  // P
};

Budgets budgetsOf(const Instance& in) {
  const long keep = static_cast<long>(in.numStations()) - in.budget;
  if (keep < 1) {
    throw UnboundedZ("|K| - P = " + std::to_string(keep) +
                     " < 1: every station may close, so z_i has no finite upper bound");
  }
  const std::size_t open =
      in.lockerCapActive ? static_cast<std::size_t>(in.budget) : in.numLockers();
  return {static_cast<std::size_t>(keep), open, static_cast<std::size_t>(in.budget)};
}

double inverse(double den, const char* what) {
  if (!(den > 0.0)) throw UnboundedZ(std::string(what) + " has an empty denominator");
  return 1.0 / den;
}

double zoneUpper(const ZoneOrder& order, const Budgets& b) {
  return inverse(order.smallestStations(b.keepAtLeast), "global upper bound");
}

LockerBounds lockerBounds(const Instance& in, const ZoneOrder& order, const Budgets& b,
                          std::size_t i, std::size_t j) {
  const double w = in.lockerWeight(i, j);
  LockerBounds out;
  out.openVacuous = b.openAtMost == 0;
  out.upperIfOpen = inverse(order.smallestStations(b.keepAtLeast) + w, "upper bound given open locker");
  out.lowerIfClosed =
      inverse(order.stationTotal + order.largestLockersExcluding(j, b.openAtMost),
              "lower bound given closed locker");
  const std::size_t others = b.openAtMost == 0 ? 0 : b.openAtMost - 1;
  out.lowerIfOpen = inverse(order.stationTotal + w + order.largestLockersExcluding(j, others),
                            "lower bound given open locker");
  return out;
}

StationBounds stationBounds(const Instance& in, const ZoneOrder& order, const Budgets& b,
                            std::size_t i, std::size_t k) {
  const double w = in.stationWeight(i, k);
  StationBounds out;
  out.closedVacuous = b.closeAtMost == 0;
  out.upperIfKept = inverse(w + order.smallestStationsExcluding(k, b.keepAtLeast - 1),
                            "upper bound given kept station");
  const double closedDen = order.stationTotal - w + order.largestLockers(b.openAtMost);
  if (closedDen > 0.0) {
    out.lowerIfClosed = 1.0 / closedDen;
  } else if (out.closedVacuous) {
    // Closing is infeasible, so any positive value is valid; keep the
    // ordering lowerIfClosed <= zUpper.
    out.lowerIfClosed = zoneUpper(order, b);
  } else {
    throw UnboundedZ("lower bound given closed station has an empty denominator");
  }
  out.lowerIfKept = inverse(order.stationTotal + order.largestLockers(b.openAtMost),
                            "lower bound given kept station");
  return out;
}

void requireZone(const Instance& in, std::size_t i) {
  if (i >= in.numZones()) throw ValidationError("zone index out of range");
}

} // namespace

double globalUpper(const Instance& in, std::size_t zone) {
  requireZone(in, zone);
  const Budgets b = budgetsOf(in);
  return zoneUpper(ZoneOrder(in, zone), b);
}

LockerBounds conditionalLocker(const Instance& in, std::size_t zone, std::size_t locker) {
  requireZone(in, zone);
  if (locker >= in.numLockers()) throw ValidationError("locker index out of range");
  const Budgets b = budgetsOf(in);
  return lockerBounds(in, ZoneOrder(in, zone), b, zone, locker);
}

StationBounds conditionalStation(const Instance& in, std::size_t zone, std::size_t station) {
  requireZone(in, zone);
  if (station >= in.numStations()) throw ValidationError("station index out of range");
  const Budgets b = budgetsOf(in);
  return stationBounds(in, ZoneOrder(in, zone), b, zone, station);
}

BoundSet allBounds(const Instance& in) {
  const Budgets b = budgetsOf(in);
  BoundSet set(in.numZones(), in.numStations(), in.numLockers());
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    const ZoneOrder order(in, i);
    set.zUpper(i) = zoneUpper(order, b);
    for (std::size_t j = 0; j < in.numLockers(); ++j) set.locker(i, j) = lockerBounds(in, order, b, i, j);
    for (std::size_t k = 0; k < in.numStations(); ++k)
      set.station(i, k) = stationBounds(in, order, b, i, k);
  }
  return set;
}

} // namespace locus
