#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/instance_io.hpp"
#include "locus/oracle.hpp"

using namespace locus;
using locus::testing::makeInstance;
using locus::testing::randomSmall;

namespace {

Instance oneByOne() {
  // d=1; station a=0.6, weight 2; locker a=1, weight 1
  return makeInstance({1.0}, {{0.6}}, {{2.0}}, {{1.0}}, {{1.0}}, 1);
}

Solution sol(std::vector<std::uint8_t> x, std::vector<std::uint8_t> r) { return {std::move(x), std::move(r)}; }

} // namespace

TEST(Coefficients, DirectProduct) {
  const Instance in = makeInstance({1.0}, {{0.5}}, {{2.0}}, {{0.0}}, {{7.0}}, 0);
  const auto c = deriveCoefficients(in);
  EXPECT_DOUBLE_EQ(c.station(0, 0), 1.0);
  EXPECT_EQ(c.locker(0, 0), 0.0);
}

TEST(Coefficients, TwoZonesHandEvaluated) {
  const Instance in = makeInstance({0.5, 0.5}, {{1.0}, {0.2}}, {{2.0}, {3.0}}, {}, {}, 0);
  const auto c = deriveCoefficients(in);
  EXPECT_DOUBLE_EQ(c.station(0, 0), 1.0);
  EXPECT_NEAR(c.station(1, 0), 0.3, 1e-15);
}

TEST(ServiceLevel, SingleZoneHandEvaluated) {
  const Instance in = oneByOne();
  EXPECT_NEAR(serviceLevel(in, sol({1}, {1})), 2.2 / 3.0, 1e-15);
  EXPECT_NEAR(serviceLevel(in, sol({1}, {1})), 0.73333, 1e-5);
}

TEST(ServiceLevel, AllClosedIsZero) {
  const Instance in = oneByOne();
  EXPECT_EQ(serviceLevel(in, sol({0}, {0})), 0.0);
}

TEST(ServiceLevel, UniformServiceCollapses) {
  const Instance in = makeInstance({0.3, 0.7}, {{0.4, 0.4}, {0.9, 0.9}}, {{1.0, 5.0}, {2.0, 0.5}},
                                   {{0.4}, {0.9}}, {{3.0}, {1.5}}, 2);
  for (const auto& s : {sol({1}, {1, 0}), sol({0}, {0, 1}), sol({1}, {1, 1})}) {
    EXPECT_NEAR(serviceLevel(in, s), 0.3 * 0.4 + 0.7 * 0.9, 1e-15);
  }
}

TEST(ServiceLevel, EvaluatorMatchesFreeFunction) {
  const Instance in = randomSmall(5);
  const Evaluator eval(in);
  forEachFeasible(in, [&](const Solution& s) { EXPECT_EQ(eval.serviceLevel(s), serviceLevel(in, s)); });
}

TEST(ServiceLevel, RangeConvexityAndScaleInvariance) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance in = randomSmall(seed);
    Instance scaled = in;
    for (std::size_t k = 0; k < in.numStations(); ++k) scaled.stationWeight(0, k) *= 3.7;
    for (std::size_t j = 0; j < in.numLockers(); ++j) scaled.lockerWeight(0, j) *= 3.7;
    const std::size_t n = in.numLockers() + in.numStations();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Solution s;
      for (std::size_t j = 0; j < in.numLockers(); ++j) s.lockerOpen.push_back((mask >> j) & 1u);
      for (std::size_t k = 0; k < in.numStations(); ++k) s.stationKept.push_back((mask >> (in.numLockers() + k)) & 1u);
      const double c = serviceLevel(in, s);
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 1.0 + 1e-12);
      ASSERT_NEAR(serviceLevel(scaled, s), c, 1e-12);
      if (mask == 0) continue;
      // per-zone contribution lies between the open min and max service
      for (std::size_t i = 0; i < in.numZones(); ++i) {
        Instance one = in;
        std::fill(one.demand.begin(), one.demand.end(), 0.0);
        one.demand[i] = 1.0;
        const double zc = serviceLevel(one, s);
        double lo = 1.0, hi = 0.0;
        for (std::size_t k = 0; k < in.numStations(); ++k)
          if (s.stationKept[k]) lo = std::min(lo, in.stationService(i, k)), hi = std::max(hi, in.stationService(i, k));
        for (std::size_t j = 0; j < in.numLockers(); ++j)
          if (s.lockerOpen[j]) lo = std::min(lo, in.lockerService(i, j)), hi = std::max(hi, in.lockerService(i, j));
        ASSERT_GE(zc, lo - 1e-12);
        ASSERT_LE(zc, hi + 1e-12);
      }
    }
  }
}

TEST(Feasibility, AtMostCounts) {
  Instance in = makeInstance({1.0}, {{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}, 2);
  const auto r = checkFeasibility(in, sol({1, 1, 1}, {1, 1, 0}));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.lockerViolation, 1);
  EXPECT_EQ(r.stationViolation, 0);
}

TEST(Feasibility, ExactCounts) {
  Instance in = makeInstance({1.0}, {{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}, 2, CardinalityMode::Exact);
  EXPECT_TRUE(checkFeasibility(in, sol({1, 1, 0}, {1, 0, 0})).ok);
  const auto r = checkFeasibility(in, sol({1, 0, 0}, {1, 1, 1}));
  EXPECT_EQ(r.lockerViolation, 1);
  EXPECT_EQ(r.stationViolation, 2);
}

TEST(Feasibility, LockerCapDropped) {
  // 51 lockers open with 20 of 25 stations closed, EXACT on stations only
  std::vector<std::vector<double>> sa(1, std::vector<double>(25, 1.0)), la(1, std::vector<double>(60, 1.0));
  Instance in = makeInstance({1.0}, sa, sa, la, la, 20, CardinalityMode::Exact);
  in.lockerCapActive = false;
  Solution s;
  s.lockerOpen.assign(60, 0);
  std::fill(s.lockerOpen.begin(), s.lockerOpen.begin() + 51, 1);
  s.stationKept.assign(25, 0);
  std::fill(s.stationKept.begin(), s.stationKept.begin() + 5, 1);
  EXPECT_TRUE(checkFeasibility(in, s).ok);
}

TEST(Penalty, FeasibleEqualsServiceLevel) {
  const Instance in = randomSmall(11, CardinalityMode::AtMost);
  forEachFeasible(in, [&](const Solution& s) {
    EXPECT_EQ(penalizedObjective(in, concatenate(s), defaultPenalty(in.mode)), serviceLevel(in, s));
  });
}

TEST(Penalty, HingeOneExcessLocker) {
  Instance in = makeInstance({1.0}, {{1, 1}}, {{1, 1}}, {{1, 1}}, {{1, 1}}, 1);
  const Solution s = sol({1, 1}, {1, 1});
  EXPECT_NEAR(penalizedObjective(in, concatenate(s), {PenaltyKind::Hinge, 2.0}), serviceLevel(in, s) - 2.0, 1e-15);
}

TEST(Penalty, SquaredHandEvaluated) {
  Instance in = makeInstance({1.0}, {{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1, 1}}, {{1, 1, 1, 1}}, 1,
                             CardinalityMode::Exact);
  const Solution s = sol({1, 1, 1, 0}, {1, 1, 0});  // lockers P+2, stations closed P
  EXPECT_NEAR(penalizedObjective(in, concatenate(s), {PenaltyKind::Squared, 1.0}), serviceLevel(in, s) - 4.0, 1e-15);
}

TEST(Penalty, SquaredWithAtMostIsConfigError) {
  const Instance in = oneByOne();
  EXPECT_THROW(penalizedObjective(in, concatenate(sol({1}, {1})), {PenaltyKind::Squared, 1.0}), ConfigError);
}

TEST(Penalty, HingeWeightTwoIsExact) {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const Instance in = randomSmall(seed, CardinalityMode::AtMost);
    const double best = enumerateOptimal(in).value;
    const std::size_t n = in.numLockers() + in.numStations();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::uint8_t> X(n);
      for (std::size_t d = 0; d < n; ++d) X[d] = (mask >> d) & 1u;
      if (checkFeasibility(in, splitConcatenated(in, X)).ok) continue;
      ASSERT_LT(penalizedObjective(in, X, defaultPenalty(in.mode)), best);
    }
  }
}

TEST(Concatenation, StationsFirst) {
  const Solution s = sol({1, 0}, {0, 1, 1});
  EXPECT_EQ(concatenate(s), (std::vector<std::uint8_t>{0, 1, 1, 1, 0}));
}

TEST(Validation, RejectsBadData) {
  Instance in = oneByOne();
  in.stationWeight(0, 0) = 0.0;
  EXPECT_FALSE(validate(in).ok());
  in = oneByOne();
  in.lockerService(0, 0) = 1.5;
  EXPECT_THROW(requireValid(in), ValidationError);
  in = oneByOne();
  in.budget = 5;
  EXPECT_THROW(requireValid(in), ValidationError);
  in = oneByOne();
  in.demand = {0.7};
  EXPECT_THROW(requireValid(in), ValidationError);
}

TEST(Validation, RisingServiceOnlyWarns) {
  Instance in = makeInstance({1.0}, {{0.2, 1.0}}, {{1, 1}}, {{1.0}}, {{1.0}}, 1);
  in.stationDist(0, 0) = 1.0;
  in.stationDist(0, 1) = 2.0;
  const auto r = validate(in);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.warnings.empty());
}

TEST(InstanceIo, RoundTripAndAlpha) {
  const Instance in = randomSmall(3);
  const Instance back = parseInstance(dumpInstance(in));
  EXPECT_EQ(dumpInstance(back), dumpInstance(in));
  EXPECT_EQ(instanceHash(back), instanceHash(in));
}

TEST(InstanceIo, DemandNormalizedAtLoad) {
  const std::string doc = R"({"zones":[{"id":"a","d":30},{"id":"b","d":10}],"stations":[{"id":"s"}],
    "lockers":[],"distStation":[[0.5],[2.5]],"distLocker":[[],[]],"aStation":[[1],[0.2]],"aLocker":[[],[]],
    "alpha":1.0,"P":0,"mode":"AT_MOST","lockerCapActive":true})";
  const Instance in = parseInstance(doc);
  EXPECT_DOUBLE_EQ(in.demand[0], 0.75);
  EXPECT_DOUBLE_EQ(in.stationWeight(1, 0), std::exp(-2.5));
}

TEST(InstanceIo, MalformedIsParseError) {
  EXPECT_THROW(parseInstance("{"), ParseError);
  EXPECT_THROW(parseInstance("{}"), ParseError);
}

TEST(InstanceIo, SolutionDocument) {
  const Instance in = oneByOne();
  const Solution s = sol({1}, {0});
  double c = 0.0;
  EXPECT_EQ(parseSolution(in, dumpSolution(in, s, 0.5), &c), s);
  EXPECT_EQ(c, 0.5);
}
