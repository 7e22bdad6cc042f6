#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/oracle.hpp"
#include "locus/pso.hpp"
#include "locus/qtla.hpp"

using namespace locus;
using locus::testing::randomSmall;

namespace {

SwarmParams quick(std::size_t iterations = 100) {
  SwarmParams p;
  p.particles = 20;
  p.iterations = iterations;
  return p;
}

Solution feasibleSeed(const Instance& in) { return runQtla(in, QtlaParams{}).best; }

} // namespace

TEST(Sigmoid, KnownValues) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(6.0), 0.997527376843, 1e-12);
}

TEST(InitSwarm, StartsAtSeed) {
  const Instance in = randomSmall(21);
  const Solution seed = statusQuo(in);
  const SwarmState s = initSwarm(in, seed, quick());
  EXPECT_EQ(s.globalValue, penalizedObjective(in, concatenate(seed), defaultPenalty(in.mode)));
  for (const auto& p : s.position) EXPECT_EQ(p, concatenate(seed));
  for (const auto& v : s.velocity)
    for (double e : v) {
      EXPECT_GE(e, -6.0);
      EXPECT_LE(e, 6.0);
    }
}

TEST(InitSwarm, VelocitiesReproducible) {
  const Instance in = randomSmall(22);
  const SwarmState a = initSwarm(in, statusQuo(in), quick());
  const SwarmState b = initSwarm(in, statusQuo(in), quick());
  EXPECT_EQ(a.velocity, b.velocity);
}

TEST(InitSwarm, InfeasibleSeedCarriesPenalty) {
  const Instance in = randomSmall(23, CardinalityMode::AtMost);
  Solution seed = statusQuo(in);
  seed.lockerOpen.assign(in.numLockers(), 1);
  const SwarmState s = initSwarm(in, seed, quick());
  EXPECT_LT(s.globalValue, 0.0);
  EXPECT_FALSE(s.haveFeasible);
}

TEST(InitSwarm, DimensionMismatch) {
  const Instance in = randomSmall(24);
  Solution bad = statusQuo(in);
  bad.lockerOpen.push_back(0);
  EXPECT_THROW(initSwarm(in, bad, quick()), ValidationError);
}

TEST(Step, GlobalBestMonotone) {
  const Instance in = randomSmall(25);
  SwarmParams p = quick();
  SwarmState s = initSwarm(in, statusQuo(in), p);
  const Evaluator eval(in);
  double prev = s.globalValue;
  for (int it = 0; it < 200; ++it) {
    step(s, p, in, eval);
    ASSERT_GE(s.globalValue, prev);
    prev = s.globalValue;
    double best = -1e300;
    for (double v : s.personalValue) best = std::max(best, v);
    ASSERT_EQ(s.globalValue, best);
  }
}

TEST(Run, ZeroIterationsReturnsSeed) {
  const Instance in = randomSmall(26);
  const Solution seed = feasibleSeed(in);
  const PsoResult r = runPso(in, seed, quick(0));
  EXPECT_EQ(r.best, seed);
  EXPECT_EQ(r.value, serviceLevel(in, seed));
}

TEST(Run, NeverWorseThanFeasibleSeed) {
  for (std::uint64_t seed = 40; seed < 46; ++seed) {
    const Instance in = randomSmall(seed);
    const Solution s0 = feasibleSeed(in);
    const PsoResult r = runPso(in, s0, quick());
    EXPECT_TRUE(checkFeasibility(in, r.best).ok);
    EXPECT_GE(r.value, serviceLevel(in, s0));
    EXPECT_EQ(r.value, serviceLevel(in, r.best));
  }
}

TEST(Run, BitReproducible) {
  const Instance in = randomSmall(27);
  const Solution seed = feasibleSeed(in);
  const PsoResult a = runPso(in, seed, quick());
  const PsoResult b = runPso(in, seed, quick());
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.trace, b.trace);
}

TEST(Replicate, SingleReplication) {
  const Instance in = randomSmall(28);
  const auto r = replicate(in, feasibleSeed(in), quick(), 1);
  EXPECT_EQ(r.average, r.maximum);
}

TEST(Replicate, ReachesOracleOnTinyInstance) {
  const Instance in = randomSmall(29);
  const double oracle = enumerateOptimal(in).value;
  const auto r = replicate(in, statusQuo(in), quick(300), 10, 2);
  EXPECT_NEAR(r.maximum, oracle, 1e-12);
  const auto again = replicate(in, statusQuo(in), quick(300), 10, 1);
  EXPECT_EQ(again.average, r.average);
  EXPECT_EQ(again.bestOf, r.bestOf);
}

TEST(Replicate, ExactModeStaysFeasible) {
  const Instance in = randomSmall(31, CardinalityMode::Exact);
  const auto r = replicate(in, feasibleSeed(in), quick(), 5);
  EXPECT_TRUE(checkFeasibility(in, r.bestOf).ok);
}
