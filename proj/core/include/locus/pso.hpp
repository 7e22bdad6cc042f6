#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "locus/evaluate.hpp"
#include "locus/instance.hpp"
#include "locus/rng.hpp"

namespace locus {

struct SwarmParams {
  std::size_t particles = 50;
  std::size_t iterations = 2000;
  double inertia = 1.0;
  double cognitive = 2.0;
  double social = 2.0;
  double maxVelocity = 6.0;
  /// Defaults to defaultPenalty(instance.mode).
  std::optional<Penalty> penalty;
  std::uint64_t seed = 42;

  static SwarmParams caseStudy() {
    SwarmParams p;
    p.iterations = 5000;
    return p;
  }
};

/// Positions are [stations kept..., lockers open...].
struct SwarmState {
  std::vector<std::vector<std::uint8_t>> position;
  std::vector<std::vector<double>> velocity;
  std::vector<std::vector<std::uint8_t>> personalBest;
  std::vector<double> personalValue;
  std::vector<std::uint8_t> globalBest;
  double globalValue = 0.0;

  /// Best budget-feasible position seen, by service level.
  std::vector<std::uint8_t> feasibleBest;
  double feasibleValue = 0.0;
  bool haveFeasible = false;

  Penalty penalty;
  Rng rng;
};

/// Every particle starts at `seed`; velocities uniform in [-vmax, vmax].
SwarmState initSwarm(const Instance& instance, const Solution& seed, const SwarmParams& params);

/// One synchronous iteration. Draw order per particle, per dimension:
/// cognitive, social, then the flip draw. The global best is refreshed
/// after all particles have moved.
void step(SwarmState& state, const SwarmParams& params, const Instance& instance, const Evaluator& eval);

inline double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

struct PsoResult {
  Solution best;
  double value = 0.0;
  std::vector<double> trace;  ///< global best after each iteration
};

/// Returns the best feasible visitor, or the seed if none was feasible.
PsoResult runPso(const Instance& instance, const Solution& seed, const SwarmParams& params);

struct ReplicationResult {
  Solution bestOf;
  double average = 0.0;
  double maximum = 0.0;
  std::vector<PsoResult> runs;
};

/// Replication r uses seed streamSeed(params.seed, r).
ReplicationResult replicate(const Instance& instance, const Solution& seed, const SwarmParams& params,
                            std::size_t replications, unsigned jobs = 1);

} // namespace locus
