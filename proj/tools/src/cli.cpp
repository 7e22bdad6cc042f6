#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locus/backend.hpp"
#include "locus/bounds.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/generator.hpp"
#include "locus/instance_io.hpp"
#include "locus/milp.hpp"
#include "locus/mps.hpp"
#include "locus/oracle.hpp"
#include "locus/pso.hpp"
#include "locus/qtla.hpp"

namespace locus::cli {

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> openLockerIds(const Instance& in, const Solution& s) {
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < s.lockerOpen.size(); ++j)
    if (s.lockerOpen[j]) ids.push_back(in.lockerIds[j]);
  return ids;
}

std::vector<std::string> closedStationIds(const Instance& in, const Solution& s) {
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < s.stationKept.size(); ++k)
    if (!s.stationKept[k]) ids.push_back(in.stationIds[k]);
  return ids;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else writeFileAtomic(path, text);
}

struct Globals {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string output;
};

struct SolveOptions {
  std::string instance;
  std::string method = "qtla+pso";
  std::string backend = "enum";
  std::string solverCmd;
  double timeLimit = 3600.0;
  double gamma = 0.9;
  bool sweep = false;
  std::string grid = "0.4:1.0:0.1";
  int nmax = 50;
  std::size_t particles = 50;
  std::size_t iters = 2000;
  std::size_t reps = 10;
  std::uint64_t psoSeed = 42;
  std::size_t maxBinaries = 26;
  std::string verify;
};

Backend makeBackend(const SolveOptions& o) {
  Backend b;
  if (o.backend == "enum") {
    b.kind = BackendKind::Enumeration;
  } else if (o.backend == "external") {
    b.kind = BackendKind::External;
    b.command = o.solverCmd;
    if (b.command.empty()) throw ConfigError(std::string("external backend needs --solver-cmd or ") + kSolverCmdEnv);
  } else {
    throw ConfigError("unknown backend '" + o.backend + "'");
  }
  return b;
}

SolveLimits makeLimits(const SolveOptions& o) {
  SolveLimits l;
  l.timeLimitSeconds = o.timeLimit;
  l.maxBinaries = o.maxBinaries;
  return l;
}

QtlaParams makeQtla(const SolveOptions& o) {
  QtlaParams p;
  p.gamma = o.gamma;
  p.maxIterations = o.nmax;
  p.backend = makeBackend(o);
  p.limits = makeLimits(o);
  return p;
}

int verifySolution(const Instance& in, const std::string& path, std::ostream& out, std::ostream& err) {
  double stored = std::nan("");
  const Solution sol = parseSolution(in, readFile(path), &stored);
  const auto feas = checkFeasibility(in, sol);
  const double c = serviceLevel(in, sol);
  out << "recomputed C " << percent(c) << " (" << std::setprecision(17) << c << ")\n";
  if (!feas.ok) {
    err << "solution violates the budget: lockers +" << feas.lockerViolation << ", stations +"
        << feas.stationViolation << "\n";
    return kValidation;
  }
  if (!std::isnan(stored) && std::abs(stored - c) > 1e-9) {
    err << "stored C " << std::setprecision(17) << stored << " differs from recomputed value\n";
    return kValidation;
  }
  out << "verified\n";
  return kOk;
}

int cmdSolve(const SolveOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  const Instance in = loadInstance(o.instance);
  if (!o.verify.empty()) return verifySolution(in, o.verify, out, err);

  const auto t0 = Clock::now();
  Solution best;
  std::ostringstream extra;
  if (o.method == "oracle") {
    const auto r = enumerateOptimal(in);
    best = r.best;
    extra << "visited     " << r.count << "\n";
  } else if (o.method == "milp" || o.method == "milp+mc") {
    const MilpModel model = o.method == "milp" ? buildBasic(in) : buildStrengthened(in);
    const MilpSolution ms = solve(model, makeBackend(o), makeLimits(o));
    extra << "status      " << toString(ms.status) << "\n";
    if (!ms.hasAssignment()) {
      out << "method      " << o.method << "\n" << extra.str();
      err << "solver returned no assignment\n";
      return kSolverFailure;
    }
    extra << "gap         " << percent(ms.gap) << "\n";
    best = recoverSolution(in, model, ms);
  } else if (o.method == "qtla" || o.method == "qtla+pso") {
    QtlaResult q;
    const QtlaParams qp = makeQtla(o);
    if (o.sweep) {
      const SweepResult sw = gammaSweep(in, parseGrid(o.grid), qp, g.jobs);
      q = sw.best();
      extra << "gamma*      " << sw.bestGamma << "\n";
    } else {
      q = runQtla(in, qp);
    }
    extra << "iterations  " << q.iterations << (q.converged ? " (converged)" : "") << "\n";
    best = q.best;
    if (o.method == "qtla+pso") {
      extra << "C_qtla      " << percent(q.value) << "\n";
      SwarmParams sp;
      sp.particles = o.particles;
      sp.iterations = o.iters;
      sp.seed = o.psoSeed;
      const auto rep = replicate(in, q.best, sp, o.reps, g.jobs);
      extra << "C_avg       " << percent(rep.average) << "\n";
      extra << "C_max       " << percent(rep.maximum) << "\n";
      best = rep.bestOf;
    }
  } else {
    throw ConfigError("unknown method '" + o.method + "'");
  }
  const double wall = secondsSince(t0);
  const double c = serviceLevel(in, best);

  out << "method      " << o.method << "\n";
  out << "C           " << percent(c) << "\n";
  out << extra.str();
  out << "open        " << join(openLockerIds(in, best)) << "\n";
  out << "closed      " << join(closedStationIds(in, best)) << "\n";
  out << "wall        " << std::fixed << std::setprecision(3) << wall << " s\n";
  out.unsetf(std::ios::floatfield);
  if (!g.output.empty()) writeFileAtomic(g.output, dumpSolution(in, best, c));
  return kOk;
}

struct GenOptions {
  GenSpec spec;
  std::string mode = "AT_MOST";
  bool noLockerCap = false;
  std::string table = "default";
};

int cmdGen(GenOptions o, const Globals& g, std::ostream& out) {
  o.spec.seed = g.seed;
  o.spec.mode = cardinalityModeFromString(o.mode);
  o.spec.lockerCapActive = !o.noLockerCap;
  if (o.table == "default") o.spec.service = defaultServiceTable();
  else if (o.table == "casestudy") o.spec.service = caseStudyServiceTable();
  else throw ConfigError("unknown service table '" + o.table + "'");
  const Instance in = generate(o.spec);
  emit(g.output, dumpInstance(in, &o.spec.alpha), out);
  return kOk;
}

int cmdSweep(const SolveOptions& o, const Globals& g, std::ostream& out) {
  const Instance in = loadInstance(o.instance);
  const SweepResult sw = gammaSweep(in, parseGrid(o.grid), makeQtla(o), g.jobs);
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "gamma,iteration,objective\n";
  for (std::size_t k = 0; k < sw.gammas.size(); ++k) {
    const auto& trace = sw.runs[k].trace;
    for (std::size_t it = 0; it < trace.size(); ++it)
      csv << sw.gammas[k] << "," << it + 1 << "," << trace[it] << "\n";
  }
  emit(g.output, csv.str(), out);
  return kOk;
}

int cmdBounds(const std::string& path, const Globals& g, std::ostream& out) {
  const Instance in = loadInstance(path);
  const BoundSet b = allBounds(in);
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "zone,facility,kind,value\n";
  for (std::size_t i = 0; i < in.numZones(); ++i) {
    const auto& z = in.zoneIds[i];
    csv << z << ",," << "z_upper," << b.zUpper(i) << "\n";
    for (std::size_t j = 0; j < in.numLockers(); ++j) {
      const auto& lb = b.locker(i, j);
      csv << z << "," << in.lockerIds[j] << ",upper_if_open," << lb.upperIfOpen << "\n";
      csv << z << "," << in.lockerIds[j] << ",lower_if_closed," << lb.lowerIfClosed << "\n";
      csv << z << "," << in.lockerIds[j] << ",lower_if_open," << lb.lowerIfOpen << "\n";
    }
    for (std::size_t k = 0; k < in.numStations(); ++k) {
      const auto& sb = b.station(i, k);
      csv << z << "," << in.stationIds[k] << ",upper_if_kept," << sb.upperIfKept << "\n";
      csv << z << "," << in.stationIds[k] << ",lower_if_closed," << sb.lowerIfClosed << "\n";
      csv << z << "," << in.stationIds[k] << ",lower_if_kept," << sb.lowerIfKept << "\n";
    }
  }
  emit(g.output, csv.str(), out);
  return kOk;
}

int cmdOracle(const std::string& path, const Globals& g, std::ostream& out) {
  const Instance in = loadInstance(path);
  const auto r = enumerateOptimal(in);
  out << "C           " << percent(r.value) << " (" << std::setprecision(17) << r.value << ")\n";
  out << "visited     " << r.count << "\n";
  out << "open        " << join(openLockerIds(in, r.best)) << "\n";
  out << "closed      " << join(closedStationIds(in, r.best)) << "\n";
  if (!g.output.empty()) writeFileAtomic(g.output, dumpSolution(in, r.best, r.value));
  return kOk;
}

struct CaseOptions {
  std::string instance;
  std::string pGrid = "0,5,10,15,20";
  std::string alphaGrid = "1,10";
  std::size_t reps = 20;
  std::size_t iters = 5000;
  std::size_t particles = 50;
  double gamma = 0.9;
  int nmax = 50;
  std::size_t maxBinaries = 26;
  std::string backend = "enum";
  std::string solverCmd;
};

int cmdCaseStudy(const CaseOptions& o, const Globals& g, std::ostream& out) {
  const Instance base = loadInstance(o.instance);
  SolveOptions so;
  so.backend = o.backend;
  so.solverCmd = o.solverCmd;
  so.gamma = o.gamma;
  so.nmax = o.nmax;
  so.maxBinaries = o.maxBinaries;
  std::ostringstream csv;
  csv << "alpha,P,C_pct,closed_stations,open_lockers,facilities\n";
  for (double alpha : parseGrid(o.alphaGrid)) {
    for (int p : parseIntGrid(o.pGrid)) {
      Instance in = base;
      applyDistanceDecay(in, alpha);
      in.budget = p;
      in.mode = CardinalityMode::Exact;
      requireValid(in);
      const QtlaResult q = runQtla(in, makeQtla(so));
      SwarmParams sp = SwarmParams::caseStudy();
      sp.iterations = o.iters;
      sp.particles = o.particles;
      sp.seed = g.seed;
      const auto rep = replicate(in, q.best, sp, o.reps, g.jobs);
      const Solution& s = rep.bestOf;
      csv << alpha << "," << p << "," << std::fixed << std::setprecision(2) << 100.0 * rep.maximum;
      csv.unsetf(std::ios::floatfield);
      csv << "," << join(closedStationIds(in, s));
      const int opened = s.openLockers();
      csv << "," << opened << "," << static_cast<int>(in.numStations()) - s.closedStations() + opened << "\n";
    }
  }
  emit(g.output, csv.str(), out);
  return kOk;
}

int cmdExportMps(const std::string& path, const std::string& formulation, const Globals& g, std::ostream& out) {
  const Instance in = loadInstance(path);
  MilpModel model;
  if (formulation == "basic") model = buildBasic(in);
  else if (formulation == "mc") model = buildStrengthened(in);
  else throw ConfigError("unknown formulation '" + formulation + "'");
  emit(g.output, exportMps(model), out);
  return kOk;
}

// Out-of-process enumeration: reads an MPS file, writes a solution file.
int cmdMpsSolve(const std::string& mps, const std::string& sol, double timeLimit, std::size_t maxBinaries) {
  const MilpModel model = parseMps(readFile(mps));
  SolveLimits limits;
  limits.timeLimitSeconds = timeLimit;
  limits.maxBinaries = maxBinaries;
  const MilpSolution ms = solveByEnumeration(model, limits);
  writeFileAtomic(sol, dumpSolutionFile(model, ms));
  return kOk;
}

} // namespace

std::string percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::vector<double> parseGrid(const std::string& text) {
  std::vector<double> out;
  const auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    const double lo = num(text.substr(0, a));
    const double hi = num(text.substr(a + 1, b - a - 1));
    const double step = num(text.substr(b + 1));
    if (!(step > 0.0) || hi < lo) throw ConfigError("bad range '" + text + "'");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    // Values are rounded to 12 digits so 0.4 + 3*0.1 prints as 0.7.
    for (long e = 0; e <= n; ++e) out.push_back(std::round((lo + e * step) * 1e12) / 1e12);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(num(item));
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

std::vector<int> parseIntGrid(const std::string& text) {
  std::vector<int> out;
  for (double v : parseGrid(text)) {
    if (v != std::floor(v)) throw ConfigError("grid '" + text + "' must hold integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<SizeSpec> parseSizes(const std::string& text) {
  std::vector<SizeSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    SizeSpec s{};
    char a = 0, b = 0;
    std::istringstream is(item);
    if (!(is >> s.zones >> a >> s.stations >> b >> s.lockers) || a != '/' || b != '/' || !is.eof()) {
      throw ConfigError("bad size '" + item + "'; expected zones/stations/lockers");
    }
    out.push_back(s);
  }
  if (out.empty()) throw ConfigError("no sizes given");
  return out;
}

int exitCodeFor(const std::exception& e) {
  if (dynamic_cast<const TooLarge*>(&e)) return kSizeCap;
  if (dynamic_cast<const ExternalSolverFailure*>(&e) || dynamic_cast<const IntegralityViolation*>(&e) ||
      dynamic_cast<const ObjectiveMismatch*>(&e)) {
    return kSolverFailure;
  }
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnboundedZ*>(&e) ||
      dynamic_cast<const EmptyFeasibleSet*>(&e) || dynamic_cast<const std::filesystem::filesystem_error*>(&e)) {
    return kValidation;
  }
  return kSolverFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parcel-locker siting under MNL choice"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key=value file ([subcommand] sections allowed)");

  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("-o,--output", g.output, "Output file (default: stdout where applicable)");

  const auto addSolverOptions = [](CLI::App* c, SolveOptions& o) {
    c->add_option("--backend", o.backend, "enum|external")->capture_default_str();
    c->add_option("--solver-cmd", o.solverCmd, "External solver template with {mps}, {sol}, {timelimit}")
        ->envname(kSolverCmdEnv);
    c->add_option("--time-limit", o.timeLimit, "Seconds per MILP solve")->capture_default_str();
    c->add_option("--max-binaries", o.maxBinaries, "Enumeration backend size cap")->capture_default_str();
    c->add_option("--nmax", o.nmax, "QT-LA iteration limit")->capture_default_str();
    c->add_option("--grid", o.grid, "Gamma grid, lo:hi:step or comma list")->capture_default_str();
  };

  SolveOptions solveOpt;
  auto* solveCmd = app.add_subcommand("solve", "Solve an instance");
  solveCmd->add_option("instance,--instance", solveOpt.instance, "Instance JSON")->required();
  solveCmd->add_option("--method", solveOpt.method, "oracle|milp|milp+mc|qtla|qtla+pso")->capture_default_str();
  addSolverOptions(solveCmd, solveOpt);
  solveCmd->add_option("--gamma", solveOpt.gamma, "QT-LA step size")->capture_default_str();
  solveCmd->add_flag("--sweep", solveOpt.sweep, "Pick gamma by sweeping --grid");
  solveCmd->add_option("--particles", solveOpt.particles)->capture_default_str();
  solveCmd->add_option("--iters", solveOpt.iters)->capture_default_str();
  solveCmd->add_option("--reps", solveOpt.reps)->capture_default_str();
  solveCmd->add_option("--pso-seed", solveOpt.psoSeed)->capture_default_str();
  solveCmd->add_option("--verify", solveOpt.verify, "Recompute and check a solution JSON instead of solving");

  GenOptions genOpt;
  auto* genCmd = app.add_subcommand("gen", "Generate a synthetic instance");
  genCmd->add_option("--ni", genOpt.spec.zones, "Zones")->capture_default_str();
  genCmd->add_option("--nj", genOpt.spec.lockers, "Candidate lockers")->capture_default_str();
  genCmd->add_option("--nk", genOpt.spec.stations, "Stations")->capture_default_str();
  genCmd->add_option("--alpha", genOpt.spec.alpha, "Utility decay per distance unit")->capture_default_str();
  genCmd->add_option("--p", genOpt.spec.budget, "Budget")->capture_default_str();
  genCmd->add_option("--mode", genOpt.mode, "AT_MOST|EXACT")->capture_default_str();
  genCmd->add_flag("--no-locker-cap", genOpt.noLockerCap, "Drop the open-locker budget row");
  genCmd->add_option("--box", genOpt.spec.boxSide, "Side of the coordinate square")->capture_default_str();
  genCmd->add_option("--table", genOpt.table, "Service table: default|casestudy")->capture_default_str();

  BenchConfig bench;
  std::string benchSizes = "50/25/25", benchAlphas = "1", benchPs = "2", benchMethods = "milp,milp+mc,qtla,qtla+pso",
              benchMode = "AT_MOST";
  auto* benchCmd = app.add_subcommand("bench", "Run a size x alpha x P grid and emit CSV");
  benchCmd->add_option("--sizes", benchSizes, "zones/stations/lockers list")->capture_default_str();
  benchCmd->add_option("--alphas", benchAlphas)->capture_default_str();
  benchCmd->add_option("--ps", benchPs)->capture_default_str();
  benchCmd->add_option("--methods", benchMethods, "Subset of oracle,milp,milp+mc,qtla,qtla+pso")
      ->capture_default_str();
  benchCmd->add_option("--mode", benchMode)->capture_default_str();
  benchCmd->add_option("--time-limit", bench.timeLimit)->capture_default_str();
  benchCmd->add_option("--reps", bench.replications)->capture_default_str();
  benchCmd->add_option("--particles", bench.particles)->capture_default_str();
  benchCmd->add_option("--iters", bench.iterations)->capture_default_str();
  benchCmd->add_option("--max-binaries", bench.maxBinaries)->capture_default_str();
  benchCmd->add_option("--solver-cmd", bench.solverCmd)->envname(kSolverCmdEnv);

  SolveOptions sweepOpt;
  auto* sweepCmd = app.add_subcommand("sweep", "QT-LA objective trace per gamma, as CSV");
  sweepCmd->add_option("instance,--instance", sweepOpt.instance)->required();
  addSolverOptions(sweepCmd, sweepOpt);

  std::string boundsPath;
  auto* boundsCmd = app.add_subcommand("bounds", "Dump all bounds on z as CSV");
  boundsCmd->add_option("instance,--instance", boundsPath)->required();

  std::string oraclePath;
  auto* oracleCmd = app.add_subcommand("oracle", "Exhaustive optimum");
  oracleCmd->add_option("instance,--instance", oraclePath)->required();

  CaseOptions caseOpt;
  auto* caseCmd = app.add_subcommand("casestudy", "EXACT-mode QT-LA+PSO over alpha x P");
  caseCmd->add_option("instance,--instance", caseOpt.instance)->required();
  caseCmd->add_option("--p-grid", caseOpt.pGrid)->capture_default_str();
  caseCmd->add_option("--alpha-grid", caseOpt.alphaGrid)->capture_default_str();
  caseCmd->add_option("--reps", caseOpt.reps)->capture_default_str();
  caseCmd->add_option("--iters", caseOpt.iters)->capture_default_str();
  caseCmd->add_option("--particles", caseOpt.particles)->capture_default_str();
  caseCmd->add_option("--gamma", caseOpt.gamma)->capture_default_str();
  caseCmd->add_option("--nmax", caseOpt.nmax)->capture_default_str();
  caseCmd->add_option("--max-binaries", caseOpt.maxBinaries)->capture_default_str();
  caseCmd->add_option("--backend", caseOpt.backend)->capture_default_str();
  caseCmd->add_option("--solver-cmd", caseOpt.solverCmd)->envname(kSolverCmdEnv);

  std::string mpsInstance, formulation = "mc";
  auto* mpsCmd = app.add_subcommand("export-mps", "Write the MILP as free-format MPS");
  mpsCmd->add_option("instance,--instance", mpsInstance)->required();
  mpsCmd->add_option("--formulation", formulation, "basic|mc")->capture_default_str();

  std::string mpsIn, solOut;
  double mpsLimit = kInfinity;
  std::size_t mpsMaxBinaries = 64;
  auto* mpsSolve = app.add_subcommand("mps-solve", "Enumerate an MPS model and write a solution file");
  mpsSolve->group("");
  mpsSolve->add_option("--mps", mpsIn)->required();
  mpsSolve->add_option("--sol", solOut)->required();
  mpsSolve->add_option("--time-limit", mpsLimit);
  mpsSolve->add_option("--max-binaries", mpsMaxBinaries);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*solveCmd) return cmdSolve(solveOpt, g, out, err);
    if (*genCmd) return cmdGen(genOpt, g, out);
    if (*benchCmd) {
      bench.sizes = parseSizes(benchSizes);
      bench.alphas = parseGrid(benchAlphas);
      bench.budgets = parseIntGrid(benchPs);
      std::stringstream ms(benchMethods);
      for (std::string m; std::getline(ms, m, ',');)
        if (!m.empty()) bench.methods.push_back(m);
      bench.mode = cardinalityModeFromString(benchMode);
      bench.seed = g.seed;
      bench.jobs = g.jobs;
      const std::string csv = runBench(bench, g.output);
      if (g.output.empty()) out << csv;
      return kOk;
    }
    if (*sweepCmd) return cmdSweep(sweepOpt, g, out);
    if (*boundsCmd) return cmdBounds(boundsPath, g, out);
    if (*oracleCmd) return cmdOracle(oraclePath, g, out);
    if (*caseCmd) return cmdCaseStudy(caseOpt, g, out);
    if (*mpsCmd) return cmdExportMps(mpsInstance, formulation, g, out);
    if (*mpsSolve) return cmdMpsSolve(mpsIn, solOut, mpsLimit, mpsMaxBinaries);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
  return kOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace locus::cli
