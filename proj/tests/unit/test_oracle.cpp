#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "locus/backend.hpp"
#include "locus/bounds.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/milp.hpp"
#include "locus/oracle.hpp"

using namespace locus;
using locus::testing::makeInstance;
using locus::testing::randomSmall;

TEST(Oracle, OneByOneVisitsFour) {
  const Instance in = makeInstance({1.0}, {{0.6}}, {{2.0}}, {{1.0}}, {{1.0}}, 1);
  const auto r = enumerateOptimal(in);
  EXPECT_EQ(r.count, 4u);
  double best = 0.0;
  for (std::uint8_t x : {0, 1})
    for (std::uint8_t k : {0, 1}) best = std::max(best, serviceLevel(in, Solution{{x}, {k}}));
  EXPECT_EQ(r.value, best);
}

TEST(Oracle, NoBudgetSingleCandidate) {
  Instance in = randomSmall(3);
  in.budget = 0;
  const auto r = enumerateOptimal(in);
  EXPECT_EQ(r.count, 1u);
  EXPECT_EQ(r.best, statusQuo(in));
}

TEST(Oracle, MatchesMilpOnSixFiveFive) {
  GenSpec spec;
  spec.zones = 6;
  spec.stations = 5;
  spec.lockers = 5;
  spec.budget = 2;
  spec.seed = 65;
  const Instance in = generate(spec);
  const MilpModel m = buildStrengthened(in);
  const auto ms = solveByEnumeration(m);
  const auto r = enumerateOptimal(in);
  EXPECT_NEAR(ms.objective, r.value, 1e-12);
  EXPECT_EQ(recoverSolution(in, m, ms), r.best);
}

TEST(Oracle, Exhaustive) {
  const Instance in = randomSmall(9);
  const auto r = enumerateOptimal(in);
  std::uint64_t n = 0;
  forEachFeasible(in, [&](const Solution& s) {
    ++n;
    ASSERT_TRUE(checkFeasibility(in, s).ok);
    ASSERT_GE(r.value, serviceLevel(in, s) - 1e-12);
  });
  EXPECT_EQ(n, r.count);
  EXPECT_EQ(n, feasibleCount(in));
}

TEST(Oracle, SizeCap) {
  const Instance in = randomSmall(9);
  EXPECT_THROW(enumerateOptimal(in, 0), TooLarge);
}

TEST(ZRange, GlobalMaxMatchesBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance in = randomSmall(seed, CardinalityMode::AtMost);
    const auto range = enumerateZRange(in, ZCondition::none());
    for (std::size_t i = 0; i < in.numZones(); ++i) EXPECT_NEAR(range[i].max, globalUpper(in, i), 1e-12 * range[i].max);
  }
}

TEST(ZRange, LockerOpenMaxMatchesBound) {
  const Instance in = randomSmall(6, CardinalityMode::AtMost);
  if (in.budget == 0) GTEST_SKIP() << "no locker can open";
  for (std::size_t j = 0; j < in.numLockers(); ++j) {
    const auto range = enumerateZRange(in, ZCondition::locker(j, true));
    for (std::size_t i = 0; i < in.numZones(); ++i)
      EXPECT_NEAR(range[i].max, conditionalLocker(in, i, j).upperIfOpen, 1e-12 * range[i].max);
  }
}

TEST(ZRange, NothingCanServe) {
  const Instance in = makeInstance({1.0}, {{1.0}}, {{1.0}}, {}, {}, 1);
  EXPECT_THROW(enumerateZRange(in, ZCondition::station(0, false)), EmptyFeasibleSet);
}
