#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "locus/backend.hpp"
#include "locus/errors.hpp"
#include "locus/evaluate.hpp"
#include "locus/generator.hpp"
#include "locus/instance_io.hpp"
#include "locus/milp.hpp"
#include "locus/oracle.hpp"
#include "locus/pso.hpp"
#include "locus/qtla.hpp"
#include "locus/rng.hpp"

namespace locus::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Row {
  std::string method;
  std::optional<double> objective;
  double seconds = 0.0;
  std::optional<double> gap;
  std::optional<double> delta;
  std::string note;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string clean(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

// Canonical order so that exact references exist before the heuristics run.
const std::vector<std::string> kOrder{"oracle", "milp", "milp+mc", "qtla", "qtla+pso"};

std::vector<Row> runCell(const BenchConfig& cfg, const Instance& in) {
  std::vector<Row> rows;
  std::optional<double> exact;
  std::optional<QtlaResult> qtla;
  double qtlaSeconds = 0.0;

  Backend backend;
  if (!cfg.solverCmd.empty()) {
    backend.kind = BackendKind::External;
    backend.command = cfg.solverCmd;
  }
  SolveLimits limits;
  limits.timeLimitSeconds = cfg.timeLimit;
  limits.maxBinaries = cfg.maxBinaries;

  const auto wants = [&](const std::string& m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
  };
  const auto ensureQtla = [&] {
    if (qtla) return;
    const auto t0 = Clock::now();
    QtlaParams p;
    p.backend = backend;
    p.limits = limits;
    const SweepResult sw = gammaSweep(in, defaultGammaGrid(), p, 1);
    qtla = sw.best();
    qtlaSeconds = std::chrono::duration<double>(Clock::now() - t0).count();
  };

  for (const auto& m : kOrder) {
    if (!wants(m)) continue;
    Row row;
    row.method = m;
    const auto t0 = Clock::now();
    try {
      if (m == "oracle") {
        if (feasibleCount(in) > kOracleCap) {
          row.note = "skipped: above the enumeration cap";
          rows.push_back(row);
          continue;
        }
        const auto r = enumerateOptimal(in);
        row.objective = r.value;
        exact = r.value;
      } else if (m == "milp" || m == "milp+mc") {
        const MilpModel model = m == "milp" ? buildBasic(in) : buildStrengthened(in);
        const MilpSolution ms = solve(model, backend, limits);
        row.note = toString(ms.status);
        if (ms.hasAssignment()) {
          const Solution s = recoverSolution(in, model, ms);
          row.objective = serviceLevel(in, s);
          row.gap = ms.gap;
          if (ms.status == SolveStatus::Optimal && !exact) exact = *row.objective;
        }
      } else if (m == "qtla") {
        ensureQtla();
        row.objective = qtla->value;
        if (exact) row.delta = (*exact - qtla->value) / qtla->value;
      } else if (m == "qtla+pso") {
        ensureQtla();
        const auto t1 = Clock::now();
        SwarmParams sp;
        sp.particles = cfg.particles;
        sp.iterations = cfg.iterations;
        sp.seed = cfg.seed;
        const auto rep = replicate(in, qtla->best, sp, cfg.replications, 1);
        row.objective = rep.maximum;
        row.note = "avg " + fixed(100.0 * rep.average, 2);
        if (exact) row.delta = (*exact - rep.maximum) / rep.maximum;
        row.seconds = qtlaSeconds + std::chrono::duration<double>(Clock::now() - t1).count();
        rows.push_back(row);
        continue;
      }
    } catch (const std::exception& e) {
      row.objective.reset();
      row.note = std::string("FAILED: ") + e.what();
    }
    row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (m == "qtla" && qtla) row.seconds = qtlaSeconds;
    rows.push_back(row);
  }
  return rows;
}

} // namespace

std::string runBench(const BenchConfig& cfg, const std::string& path) {
  if (cfg.methods.empty()) throw ConfigError("bench needs at least one method");
  for (const auto& m : cfg.methods) {
    if (std::find(kOrder.begin(), kOrder.end(), m) == kOrder.end()) throw ConfigError("unknown method '" + m + "'");
  }

  struct Cell {
    SizeSpec size;
    double alpha;
    int budget;
    std::string text;
    bool done = false;
  };
  std::vector<Cell> cells;
  for (const auto& s : cfg.sizes)
    for (double a : cfg.alphas)
      for (int p : cfg.budgets) cells.push_back({s, a, p, "", false});

  const std::string header = "size,alpha,P,method,objective_pct,cpu_s,gap_pct,delta_pct,note\n";
  std::mutex mu;
  const auto flush = [&] {
    std::string csv = header;
    for (const auto& c : cells)
      if (c.done) csv += c.text;
    if (!path.empty() && path != "-") writeFileAtomic(path, csv);
    return csv;
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t idx; (idx = next.fetch_add(1)) < cells.size();) {
      Cell& c = cells[idx];
      std::ostringstream label;
      label << c.size.zones << "/" << c.size.stations << "/" << c.size.lockers;
      std::ostringstream alpha;
      alpha << c.alpha;
      const std::string prefix = label.str() + "," + alpha.str() + "," + std::to_string(c.budget) + ",";
      std::ostringstream out;
      try {
        GenSpec spec;
        spec.zones = c.size.zones;
        spec.stations = c.size.stations;
        spec.lockers = c.size.lockers;
        spec.alpha = c.alpha;
        spec.budget = c.budget;
        spec.mode = cfg.mode;
        spec.seed = streamSeed(cfg.seed, idx);
        const Instance in = generate(spec);
        for (const auto& r : runCell(cfg, in)) {
          out << prefix << r.method << ",";
          if (r.objective) out << fixed(100.0 * *r.objective, 2);
          else if (r.note.rfind("FAILED", 0) == 0) out << "FAILED";
          out << "," << fixed(r.seconds, 3) << ",";
          if (r.gap) out << (std::isfinite(*r.gap) ? fixed(100.0 * *r.gap, 2) : "inf");
          out << ",";
          if (r.delta) out << fixed(100.0 * *r.delta, 2);
          out << "," << clean(r.note) << "\n";
        }
      } catch (const std::exception& e) {
        out << prefix << "*,FAILED,,,," << clean(e.what()) << "\n";
      }
      std::lock_guard<std::mutex> lock(mu);
      c.text = out.str();
      c.done = true;
      flush();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return flush();
}

} // namespace locus::cli
