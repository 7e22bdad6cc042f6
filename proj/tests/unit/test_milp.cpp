#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "locus/backend.hpp"
#include "locus/bounds.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/milp.hpp"
#include "locus/mps.hpp"
#include "locus/oracle.hpp"

using namespace locus;
using locus::testing::makeInstance;
using locus::testing::randomSmall;

namespace {

Instance twoByTwo() {
  return makeInstance({0.4, 0.6}, {{1.0, 0.5}, {0.2, 1.0}}, {{1.0, 0.5}, {0.3, 1.2}}, {{0.5, 1.0}, {1.0, 0.2}},
                      {{0.7, 1.1}, {0.9, 0.4}}, 1);
}

Backend stub() {
  Backend b;
  b.kind = BackendKind::External;
  b.command = std::string(LOCUS_STUB_SOLVER) + " {mps} {sol} {timelimit}";
  return b;
}

} // namespace

TEST(BuildBasic, SizesForTwoByTwo) {
  const MilpModel m = buildBasic(twoByTwo());
  EXPECT_EQ(m.variables().size(), 14u);
  // normalization 2, three linking rows per product 3*(4+4), budgets 2
  EXPECT_EQ(m.rows().size(), 2u + 24u + 2u);
  EXPECT_EQ(m.formulation(), Formulation::Basic);
  EXPECT_EQ(m.name().rfind("BASIC_", 0), 0u);
}

TEST(BuildStrengthened, SizesForTwoByTwo) {
  const MilpModel m = buildStrengthened(twoByTwo());
  EXPECT_EQ(m.variables().size(), 14u);
  EXPECT_EQ(m.rows().size(), 2u + 32u + 2u);
  EXPECT_EQ(m.formulation(), Formulation::McCormick);
}

TEST(BuildBasic, NoBudgetGivesStatusQuo) {
  Instance in = twoByTwo();
  in.budget = 0;
  const MilpModel m = buildBasic(in);
  const MilpSolution ms = solveByEnumeration(m);
  ASSERT_EQ(ms.status, SolveStatus::Optimal);
  EXPECT_NEAR(ms.objective, serviceLevel(in, statusQuo(in)), 1e-12);
  EXPECT_EQ(recoverSolution(in, m, ms), statusQuo(in));
}

TEST(BuildBasic, RefusesUnboundedZ) {
  Instance in = twoByTwo();
  in.budget = 2;
  EXPECT_THROW(buildBasic(in), UnboundedZ);
  EXPECT_THROW(buildStrengthened(in), UnboundedZ);
}

TEST(Formulations, MatchOracleOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance in = randomSmall(seed);
    const double oracle = enumerateOptimal(in).value;
    for (const MilpModel& m : {buildBasic(in), buildStrengthened(in)}) {
      const MilpSolution ms = solveByEnumeration(m);
      ASSERT_EQ(ms.status, SolveStatus::Optimal) << m.name();
      EXPECT_NEAR(ms.objective, oracle, 1e-9) << "seed " << seed << " " << m.name();
      EXPECT_NEAR(serviceLevel(in, recoverSolution(in, m, ms)), oracle, 1e-9);
    }
  }
}

TEST(Strengthened, RowsHoldAtEveryFeasiblePoint) {
  const Instance in = randomSmall(4);
  const MilpModel m = buildStrengthened(in);
  const ModelLayout layout = ModelLayout::infer(m);
  forEachFeasible(in, [&](const Solution& s) {
    std::vector<double> v(m.variables().size(), 0.0);
    for (std::size_t j = 0; j < in.numLockers(); ++j) v[layout.lockerVar[j]] = s.lockerOpen[j];
    for (std::size_t k = 0; k < in.numStations(); ++k) v[layout.stationVar[k]] = s.stationKept[k];
    std::vector<double> z(in.numZones());
    for (std::size_t i = 0; i < in.numZones(); ++i) {
      double den = 0.0;
      for (std::size_t k = 0; k < in.numStations(); ++k) den += s.stationKept[k] * in.stationWeight(i, k);
      for (std::size_t j = 0; j < in.numLockers(); ++j) den += s.lockerOpen[j] * in.lockerWeight(i, j);
      z[i] = 1.0 / den;
      v[layout.zoneVar[i]] = z[i];
    }
    for (const auto& p : layout.products) v[p.var] = v[p.binary] * z[p.zone];
    for (std::size_t r = 0; r < m.rows().size(); ++r) {
      const Row& row = m.rows()[r];
      const double act = m.rowActivity(r, v);
      const double tol = 1e-9 * (1.0 + std::abs(row.rhs) + std::abs(act));
      if (row.sense == RowSense::LessEqual) {
        ASSERT_LE(act, row.rhs + tol) << row.name;
      }
      if (row.sense == RowSense::GreaterEqual) {
        ASSERT_GE(act, row.rhs - tol) << row.name;
      }
      if (row.sense == RowSense::Equal) {
        ASSERT_NEAR(act, row.rhs, tol) << row.name;
      }
    }
  });
}

TEST(Strengthened, BinaryFixesProduct) {
  // x_j = 1 pins y = z; x_j = 0 pins y = 0, via the row bounds alone.
  const Instance in = twoByTwo();
  const BoundSet b = allBounds(in);
  const auto& lb = b.locker(0, 0);
  EXPECT_GT(lb.upperIfOpen, 0.0);
  const MilpModel m = buildStrengthened(in);
  const auto y = *m.findVariable(names::lockerProduct(0, 0));
  const auto x = *m.findVariable(names::lockerOpen(0));
  const auto z = *m.findVariable(names::zoneInverse(0));
  std::vector<double> v(m.variables().size(), 0.0);
  const auto violated = [&] {
    for (std::size_t r = 0; r < m.rows().size(); ++r) {
      const Row& row = m.rows()[r];
      bool touches = false;
      for (const auto& t : row.terms) touches |= t.var == y;
      if (!touches) continue;
      const double act = m.rowActivity(r, v);
      if (row.sense == RowSense::LessEqual && act > row.rhs + 1e-12) return true;
      if (row.sense == RowSense::GreaterEqual && act < row.rhs - 1e-12) return true;
    }
    return false;
  };
  v[x] = 1.0;
  v[z] = 0.5 * (lb.lowerIfOpen + lb.upperIfOpen);
  v[y] = v[z];
  EXPECT_FALSE(violated());
  v[y] = v[z] * 0.99;
  EXPECT_TRUE(violated());
  v[x] = 0.0;
  v[z] = b.zUpper(0);
  v[y] = 0.0;
  EXPECT_FALSE(violated());
  v[y] = 1e-6;
  EXPECT_TRUE(violated());
}

TEST(Solve, OneByOneAtMost) {
  // With a single closable station z is unbounded, so the MILP path refuses
  // the instance; the oracle still covers all four configurations.
  const Instance in = makeInstance({1.0}, {{0.6}}, {{2.0}}, {{1.0}}, {{1.0}}, 1);
  EXPECT_THROW(buildBasic(in), UnboundedZ);
  EXPECT_EQ(enumerateOptimal(in).count, 4u);

  const Instance two = makeInstance({1.0}, {{0.6, 0.3}}, {{2.0, 1.0}}, {{1.0}}, {{1.0}}, 1);
  const auto oracle = enumerateOptimal(two);
  EXPECT_EQ(oracle.count, 6u);
  const MilpModel m = buildBasic(two);
  const auto ms = solveByEnumeration(m);
  EXPECT_NEAR(ms.objective, oracle.value, 1e-12);
  EXPECT_EQ(recoverSolution(two, m, ms), oracle.best);
}

TEST(Solve, ExactModeUniqueSolution) {
  const Instance single = makeInstance({1.0}, {{0.6}}, {{2.0}}, {{1.0}}, {{1.0}}, 1, CardinalityMode::Exact);
  const auto o = enumerateOptimal(single);
  EXPECT_EQ(o.count, 1u);
  EXPECT_EQ(o.best, (Solution{{1}, {0}}));

  // 1 locker, 2 stations, P=1: exactly one open locker, one closed station.
  const Instance in =
      makeInstance({1.0}, {{0.6, 0.3}}, {{2.0, 1.0}}, {{1.0}}, {{1.0}}, 1, CardinalityMode::Exact);
  const MilpModel m = buildStrengthened(in);
  const auto s = recoverSolution(in, m, solveByEnumeration(m));
  EXPECT_EQ(s.lockerOpen, std::vector<std::uint8_t>{1});
  EXPECT_EQ(s.closedStations(), 1);
}

TEST(Solve, EnumerationCap) {
  GenSpec spec;
  spec.zones = 3;
  spec.stations = 14;
  spec.lockers = 14;
  spec.budget = 2;
  const Instance in = generate(spec);
  EXPECT_THROW(solveByEnumeration(buildBasic(in)), EnumerationTooLarge);
  SolveLimits l;
  l.maxBinaries = 28;
  EXPECT_EQ(solveByEnumeration(buildBasic(in), l).status, SolveStatus::Optimal);
}

TEST(Solve, DeterministicTieBreak) {
  // identical lockers: the lexicographically smallest optimum wins
  const Instance in = makeInstance({1.0}, {{0.2, 0.2}}, {{1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}, 1);
  const MilpModel m = buildBasic(in);
  const Solution s = recoverSolution(in, m, solveByEnumeration(m));
  EXPECT_EQ(s.lockerOpen, (std::vector<std::uint8_t>{0, 0, 1}));
  EXPECT_EQ(s, enumerateOptimal(in).best);
}

TEST(Recover, IntegralityViolation) {
  const Instance in = twoByTwo();
  const MilpModel m = buildBasic(in);
  MilpSolution ms = solveByEnumeration(m);
  EXPECT_EQ(recoverSolution(in, m, ms), recoverSolution(in, m, ms));
  ms.values[*m.findVariable(names::lockerOpen(0))] = 0.4;
  EXPECT_THROW(recoverSolution(in, m, ms), IntegralityViolation);
}

TEST(Recover, ObjectiveMismatch) {
  const Instance in = twoByTwo();
  const MilpModel m = buildBasic(in);
  MilpSolution ms = solveByEnumeration(m);
  ms.objective += 1e-3;
  EXPECT_THROW(recoverSolution(in, m, ms), ObjectiveMismatch);
}

TEST(SolutionFile, TextRoundTrip) {
  const Instance in = twoByTwo();
  const MilpModel m = buildStrengthened(in);
  const MilpSolution ms = solveByEnumeration(m);
  const MilpSolution back = parseSolutionFile(m, dumpSolutionFile(m, ms));
  EXPECT_EQ(back.status, ms.status);
  EXPECT_EQ(back.values, ms.values);
  EXPECT_EQ(back.objective, ms.objective);
}

TEST(SolutionFile, JsonLayouts) {
  MilpModel m;
  const auto x = m.addBinary("x");
  const auto y = m.addContinuous("y", 0.0, 4.0);
  m.addObjective(x, 1.0);
  m.addObjective(y, 0.5);
  const MilpSolution flat = parseSolutionFile(m, R"({"x": 1, "y": 2.5})");
  EXPECT_EQ(flat.status, SolveStatus::Feasible);
  EXPECT_DOUBLE_EQ(flat.objective, 2.25);
  const MilpSolution full =
      parseSolutionFile(m, R"({"status":"OPTIMAL","objective":2.25,"gap":0,"values":{"x":1}})");
  EXPECT_EQ(full.status, SolveStatus::Optimal);
  EXPECT_EQ(full.values[y], 0.0);
  EXPECT_THROW(parseSolutionFile(m, R"({"nope": 1})"), ParseError);
}

TEST(External, StubSolverMatchesInProcess) {
  const Instance in = randomSmall(8);
  const MilpModel m = buildStrengthened(in);
  const MilpSolution a = solveByEnumeration(m);
  const MilpSolution b = solve(m, stub());
  ASSERT_EQ(b.status, SolveStatus::Optimal);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(recoverSolution(in, m, b), recoverSolution(in, m, a));
}

TEST(External, ZeroTimeLimitReportsGap) {
  GenSpec spec;
  spec.zones = 4;
  spec.stations = 4;
  spec.lockers = 4;
  spec.budget = 2;
  const Instance in = generate(spec);
  SolveLimits l;
  l.timeLimitSeconds = 0.0;
  const MilpSolution ms = solve(buildBasic(in), stub(), l);
  EXPECT_EQ(ms.status, SolveStatus::TimeLimit);
  EXPECT_TRUE(ms.hasAssignment());
  EXPECT_GE(ms.gap, 0.0);
}

TEST(External, FailuresSurface) {
  const MilpModel m = buildBasic(twoByTwo());
  EXPECT_THROW(solveExternal(m, "false"), ExternalSolverFailure);
  EXPECT_THROW(solveExternal(m, "true"), ExternalSolverFailure);
  EXPECT_THROW(solveExternal(m, "echo garbage > {sol}"), ExternalSolverFailure);
  EXPECT_THROW(solveExternal(m, ""), ExternalSolverFailure);
}
