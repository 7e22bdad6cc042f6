#include "locus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "locus/errors.hpp"
#include "locus/evaluate.hpp"

namespace locus {

namespace {

struct SizeRange {
  std::size_t lo;
  std::size_t hi;
};

// Allowed number of ones among the lockers / number of closed stations.
SizeRange lockerSizes(const Instance& inst) {
  const std::size_t n = inst.numLockers();
  const auto p = static_cast<std::size_t>(inst.budget);
  if (!inst.lockerCapActive) return {0, n};
  if (inst.mode == CardinalityMode::Exact) return {p, p};
  return {0, std::min(p, n)};
}

SizeRange closedSizes(const Instance& inst) {
  const std::size_t n = inst.numStations();
  const auto p = static_cast<std::size_t>(inst.budget);
  if (inst.mode == CardinalityMode::Exact) return {p, p};
  return {0, std::min(p, n)};
}

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t subsetCount(std::size_t n, SizeRange r) {
  std::uint64_t total = 0;
  for (std::size_t s = r.lo; s <= r.hi && s <= n; ++s) {
    // C(n, s) via a running product, saturating
    long double c = 1.0L;
    for (std::size_t i = 1; i <= s; ++i) c = c * static_cast<long double>(n - s + i) / static_cast<long double>(i);
    const long double rounded = std::round(c);
    if (rounded >= 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
    total += static_cast<std::uint64_t>(rounded);
  }
  return total;
}

// Every subset of {0..n-1} with size in range, as 0/1 masks where `mark`
// is the value of chosen members. Order: by size, then lexicographic.
template <class F>
void forEachSubset(std::size_t n, SizeRange r, std::uint8_t mark, F&& visit) {
  std::vector<std::uint8_t> mask(n);
  std::vector<std::size_t> idx;
  for (std::size_t s = r.lo; s <= std::min(r.hi, n); ++s) {
    idx.resize(s);
    for (std::size_t t = 0; t < s; ++t) idx[t] = t;
    while (true) {
      std::fill(mask.begin(), mask.end(), static_cast<std::uint8_t>(1 - mark));
      for (auto t : idx) mask[t] = mark;
      visit(mask);
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t t = i; t < s; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
}

// Per-zone numerator and denominator of every subset on one side.
struct SideTable {
  std::vector<std::vector<std::uint8_t>> masks;
  std::vector<double> num;  // masks.size() x zones
  std::vector<double> den;
};

SideTable tabulate(std::size_t n, SizeRange r, std::uint8_t mark, const Matrix& b, const Matrix& w) {
  SideTable t;
  const std::size_t zones = b.rows();
  forEachSubset(n, r, mark, [&](const std::vector<std::uint8_t>& mask) {
    t.masks.push_back(mask);
    for (std::size_t i = 0; i < zones; ++i) {
      double nu = 0.0, de = 0.0;
      for (std::size_t f = 0; f < n; ++f) {
        if (!mask[f]) continue;
        nu += b(i, f);
        de += w(i, f);
      }
      t.num.push_back(nu);
      t.den.push_back(de);
    }
  });
  return t;
}

} // namespace

std::uint64_t feasibleCount(const Instance& instance) {
  return saturatingMul(subsetCount(instance.numLockers(), lockerSizes(instance)),
                       subsetCount(instance.numStations(), closedSizes(instance)));
}

void forEachFeasible(const Instance& instance, const std::function<void(const Solution&)>& visit,
                     std::uint64_t cap) {
  const std::uint64_t count = feasibleCount(instance);
  if (count > cap) {
    throw TooLarge("enumeration needs " + std::to_string(count) + " points; cap is " + std::to_string(cap));
  }
  Solution sol;
  forEachSubset(instance.numLockers(), lockerSizes(instance), 1, [&](const std::vector<std::uint8_t>& x) {
    sol.lockerOpen = x;
    forEachSubset(instance.numStations(), closedSizes(instance), 0, [&](const std::vector<std::uint8_t>& r) {
      sol.stationKept = r;
      visit(sol);
    });
  });
}

OracleResult enumerateOptimal(const Instance& instance, std::uint64_t cap) {
  requireValid(instance);
  const std::uint64_t count = feasibleCount(instance);
  if (count > cap) {
    throw TooLarge("enumeration needs " + std::to_string(count) + " points; cap is " + std::to_string(cap));
  }
  const Coefficients coef = deriveCoefficients(instance);
  const std::size_t zones = instance.numZones();
  const SideTable lockers =
      tabulate(instance.numLockers(), lockerSizes(instance), 1, coef.locker, instance.lockerWeight);
  const SideTable stations =
      tabulate(instance.numStations(), closedSizes(instance), 0, coef.station, instance.stationWeight);

  constexpr double kTie = 1e-12;
  OracleResult res;
  bool have = false;
  std::size_t bestX = 0, bestR = 0;
  for (std::size_t a = 0; a < lockers.masks.size(); ++a) {
    const double* nx = lockers.num.data() + a * zones;
    const double* dx = lockers.den.data() + a * zones;
    for (std::size_t c = 0; c < stations.masks.size(); ++c) {
      const double* nr = stations.num.data() + c * zones;
      const double* dr = stations.den.data() + c * zones;
      double value = 0.0;
      for (std::size_t i = 0; i < zones; ++i) {
        const double den = dr[i] + dx[i];
        if (den > 0.0) value += (nr[i] + nx[i]) / den;
      }
      ++res.count;
      bool better = !have || value > res.value + kTie;
      if (!better && std::abs(value - res.value) <= kTie) {
        const auto key = std::tie(lockers.masks[a], stations.masks[c]);
        better = key < std::tie(lockers.masks[bestX], stations.masks[bestR]);
      }
      if (better) {
        have = true;
        res.value = value;
        bestX = a;
        bestR = c;
      }
    }
  }
  if (!have) throw EmptyFeasibleSet("no configuration satisfies the budget rows");
  res.best.lockerOpen = lockers.masks[bestX];
  res.best.stationKept = stations.masks[bestR];
  return res;
}

std::vector<ZRange> enumerateZRange(const Instance& instance, const ZCondition& condition, std::uint64_t cap) {
  requireValid(instance);
  const std::size_t zones = instance.numZones();
  if (condition.on == ZCondition::On::Locker && condition.index >= instance.numLockers())
    throw ValidationError("condition locker index out of range");
  if (condition.on == ZCondition::On::Station && condition.index >= instance.numStations())
    throw ValidationError("condition station index out of range");

  std::vector<ZRange> out(zones, {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  bool any = false;
  forEachFeasible(
      instance,
      [&](const Solution& s) {
        if (condition.on == ZCondition::On::Locker && (s.lockerOpen[condition.index] != 0) != condition.value) return;
        if (condition.on == ZCondition::On::Station && (s.stationKept[condition.index] != 0) != condition.value) return;
        bool empty = false;
        std::vector<double> z(zones);
        for (std::size_t i = 0; i < zones && !empty; ++i) {
          double den = 0.0;
          for (std::size_t k = 0; k < instance.numStations(); ++k)
            if (s.stationKept[k]) den += instance.stationWeight(i, k);
          for (std::size_t j = 0; j < instance.numLockers(); ++j)
            if (s.lockerOpen[j]) den += instance.lockerWeight(i, j);
          if (!(den > 0.0)) empty = true;
          else z[i] = 1.0 / den;
        }
        if (empty) return;
        any = true;
        for (std::size_t i = 0; i < zones; ++i) {
          out[i].min = std::min(out[i].min, z[i]);
          out[i].max = std::max(out[i].max, z[i]);
        }
      },
      cap);
  if (!any) throw EmptyFeasibleSet("no feasible point meets the condition with an open facility");
  return out;
}

} // namespace locus
