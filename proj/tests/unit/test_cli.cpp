#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "locus/errors.hpp"
#include "locus/generator.hpp"
#include "locus/instance_io.hpp"
#include "locus/oracle.hpp"

using namespace locus;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("locus-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string smallInstance(std::size_t zones = 5, std::size_t stations = 3, std::size_t lockers = 3, int budget = 2) {
    GenSpec s;
    s.zones = zones;
    s.stations = stations;
    s.lockers = lockers;
    s.budget = budget;
    s.seed = 11;
    const std::string path = (dir_ / "inst.json").string();
    saveInstance(generate(s), path);
    return path;
  }

  fs::path dir_;
};

} // namespace

TEST_F(CliTest, MissingFileIsValidationError) {
  const auto r = call({"solve", (dir_ / "nope.json").string(), "--method", "oracle"});
  EXPECT_EQ(r.code, cli::kValidation);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, UnknownOptionIsValidationError) {
  EXPECT_EQ(call({"solve", "--bogus"}).code, cli::kValidation);
  EXPECT_EQ(call({}).code, cli::kValidation);
}

TEST_F(CliTest, OracleSolve) {
  const std::string path = smallInstance();
  const auto r = call({"solve", path, "--method", "oracle"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const double best = enumerateOptimal(loadInstance(path)).value;
  EXPECT_NE(r.out.find(cli::percent(best)), std::string::npos) << r.out;
}

TEST_F(CliTest, EveryMethodAgreesOnTinyInstance) {
  const std::string path = smallInstance(4, 3, 2, 1);
  const std::string expected = cli::percent(enumerateOptimal(loadInstance(path)).value);
  for (const std::string m : {"milp", "milp+mc", "qtla", "qtla+pso"}) {
    const auto r = call({"solve", path, "--method", m, "--iters", "200", "--reps", "2"});
    ASSERT_EQ(r.code, cli::kOk) << m << ": " << r.err;
    EXPECT_NE(r.out.find(expected), std::string::npos) << m << ": " << r.out;
  }
}

TEST_F(CliTest, SizeCapExitCode) {
  const std::string path = smallInstance(5, 6, 6);
  const auto r = call({"solve", path, "--method", "milp", "--max-binaries", "4"});
  EXPECT_EQ(r.code, cli::kSizeCap) << r.err;
}

TEST_F(CliTest, FailingExternalSolverExitCode) {
  const std::string path = smallInstance();
  const auto r = call({"solve", path, "--method", "milp", "--backend", "external", "--solver-cmd", "false"});
  EXPECT_EQ(r.code, cli::kSolverFailure);
}

TEST_F(CliTest, GenWritesLoadableInstance) {
  const std::string out = (dir_ / "gen.json").string();
  const auto r = call({"gen", "--ni", "7", "--nj", "3", "--nk", "4", "--p", "2", "-o", out, "--seed", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Instance in = loadInstance(out);
  EXPECT_EQ(in.numZones(), 7u);
  EXPECT_EQ(in.numLockers(), 3u);
  EXPECT_EQ(in.numStations(), 4u);
}

TEST_F(CliTest, VerifyRoundTrip) {
  const std::string path = smallInstance();
  const Instance in = loadInstance(path);
  const auto best = enumerateOptimal(in);
  const std::string sol = (dir_ / "sol.json").string();
  writeFileAtomic(sol, dumpSolution(in, best.best, best.value));
  const auto ok = call({"solve", path, "--verify", sol});
  EXPECT_EQ(ok.code, cli::kOk) << ok.err;
  EXPECT_NE(ok.out.find("verified"), std::string::npos);

  writeFileAtomic(sol, dumpSolution(in, best.best, best.value + 0.01));
  EXPECT_EQ(call({"solve", path, "--verify", sol}).code, cli::kValidation);
}

TEST_F(CliTest, BenchCsv) {
  const std::string csv = (dir_ / "bench.csv").string();
  const auto r = call({"bench", "--sizes", "4/3/2", "--alphas", "1", "--ps", "1,2", "--methods", "oracle,milp,qtla",
                       "-o", csv});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string text = readFile(csv);
  EXPECT_EQ(text.rfind("size,alpha,P,method,", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  EXPECT_EQ(text.find("FAILED"), std::string::npos) << text;
}

TEST_F(CliTest, ExportMps) {
  const std::string path = smallInstance();
  const auto r = call({"export-mps", path, "--formulation", "mc"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind("NAME", 0), 0u);
  EXPECT_NE(r.out.find("ENDATA"), std::string::npos);
}

TEST_F(CliTest, CaseStudyCountsFacilities) {
  const std::string path = smallInstance(5, 4, 3);
  const auto r = call({"casestudy", path, "--alpha-grid", "1", "--p-grid", "1:2:1", "--iters", "50", "--reps", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "alpha,P,C_pct,closed_stations,open_lockers,facilities");
  for (int p = 1; p <= 2; ++p) {
    ASSERT_TRUE(std::getline(lines, line));
    // EXACT budgets: p lockers open, p stations closed, 4 facilities in total
    EXPECT_EQ(line.substr(line.size() - 4), "," + std::to_string(p) + ",4") << line;
  }
}

TEST(Parsing, Grids) {
  const auto g = cli::parseGrid("0.4:1.0:0.1");
  ASSERT_EQ(g.size(), 7u);
  EXPECT_DOUBLE_EQ(g.front(), 0.4);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_EQ(cli::parseGrid("0.5,2"), (std::vector<double>{0.5, 2.0}));
  EXPECT_EQ(cli::parseIntGrid("1:3:1"), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(cli::parseGrid("1:0:0.1"), ConfigError);
  EXPECT_THROW(cli::parseGrid("x"), ConfigError);
  const auto sizes = cli::parseSizes("50/25/20");
  ASSERT_EQ(sizes.size(), 1u);
  EXPECT_EQ(sizes[0].zones, 50u);
  EXPECT_EQ(sizes[0].stations, 25u);
  EXPECT_EQ(sizes[0].lockers, 20u);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exitCodeFor(EnumerationTooLarge("x")), cli::kSizeCap);
  EXPECT_EQ(cli::exitCodeFor(ExternalSolverFailure("x")), cli::kSolverFailure);
  EXPECT_EQ(cli::exitCodeFor(ParseError("x")), cli::kValidation);
}
