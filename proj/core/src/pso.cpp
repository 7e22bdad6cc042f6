#include "locus/pso.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "locus/errors.hpp"

namespace locus {

namespace {

bool budgetFeasible(const Instance& inst, std::span<const std::uint8_t> X) {
  const std::size_t nK = inst.numStations();
  int kept = 0, open = 0;
  for (std::size_t d = 0; d < X.size(); ++d) (d < nK ? kept : open) += X[d];
  const int closed = static_cast<int>(nK) - kept;
  if (inst.mode == CardinalityMode::Exact) {
    return closed == inst.budget && (!inst.lockerCapActive || open == inst.budget);
  }
  return closed <= inst.budget && (!inst.lockerCapActive || open <= inst.budget);
}

void trackFeasible(SwarmState& s, const Instance& inst, const Evaluator& eval,
                   const std::vector<std::uint8_t>& X) {
  if (!budgetFeasible(inst, X)) return;
  const std::size_t nK = inst.numStations();
  const std::span<const std::uint8_t> all(X);
  const double v = eval.serviceLevel(all.subspan(nK), all.first(nK));
  if (!s.haveFeasible || v > s.feasibleValue) {
    s.feasibleBest = X;
    s.feasibleValue = v;
    s.haveFeasible = true;
  }
}

struct Context {
  const Instance& instance;
  const Evaluator& eval;
};

void stepImpl(SwarmState& s, const SwarmParams& p, const Context& ctx) {
  const std::size_t dims = s.globalBest.size();
  for (std::size_t q = 0; q < s.position.size(); ++q) {
    auto& pos = s.position[q];
    auto& vel = s.velocity[q];
    const auto& pb = s.personalBest[q];
    for (std::size_t d = 0; d < dims; ++d) {
      const double u1 = uniform01(s.rng);
      const double u2 = uniform01(s.rng);
      double v = p.inertia * vel[d] + p.cognitive * u1 * (double(pb[d]) - pos[d]) +
                 p.social * u2 * (double(s.globalBest[d]) - pos[d]);
      v = std::clamp(v, -p.maxVelocity, p.maxVelocity);
      vel[d] = v;
      pos[d] = uniform01(s.rng) < sigmoid(v) ? 1 : 0;
    }
    const double value = ctx.eval.penalized(pos, s.penalty);
    if (value > s.personalValue[q]) {
      s.personalValue[q] = value;
      s.personalBest[q] = pos;
    }
    trackFeasible(s, ctx.instance, ctx.eval, pos);
  }
  for (std::size_t q = 0; q < s.position.size(); ++q) {
    if (s.personalValue[q] > s.globalValue) {
      s.globalValue = s.personalValue[q];
      s.globalBest = s.personalBest[q];
    }
  }
}

} // namespace

SwarmState initSwarm(const Instance& instance, const Solution& seed, const SwarmParams& params) {
  requireShape(instance, seed);
  if (params.particles < 1) throw ConfigError("swarm needs at least one particle");
  if (!(params.maxVelocity > 0.0)) throw ConfigError("velocity clamp must be positive");
  SwarmState s;
  s.penalty = params.penalty.value_or(defaultPenalty(instance.mode));
  s.rng = Rng(params.seed);
  const auto X = concatenate(seed);
  const Evaluator eval(instance);
  const double value = eval.penalized(X, s.penalty);
  s.position.assign(params.particles, X);
  s.personalBest.assign(params.particles, X);
  s.personalValue.assign(params.particles, value);
  s.globalBest = X;
  s.globalValue = value;
  s.velocity.assign(params.particles, std::vector<double>(X.size()));
  for (auto& v : s.velocity)
    for (auto& e : v) e = uniform(s.rng, -params.maxVelocity, params.maxVelocity);
  trackFeasible(s, instance, eval, X);
  return s;
}

void step(SwarmState& state, const SwarmParams& params, const Instance& instance, const Evaluator& eval) {
  stepImpl(state, params, Context{instance, eval});
}

PsoResult runPso(const Instance& instance, const Solution& seed, const SwarmParams& params) {
  requireValid(instance);
  SwarmState s = initSwarm(instance, seed, params);
  const Evaluator eval(instance);
  const Context ctx{instance, eval};
  PsoResult res;
  res.trace.reserve(params.iterations);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    stepImpl(s, params, ctx);
    res.trace.push_back(s.globalValue);
  }
  if (s.haveFeasible) {
    res.best = splitConcatenated(instance, s.feasibleBest);
    res.value = s.feasibleValue;
  } else {
    res.best = seed;
    res.value = eval.serviceLevel(seed);
  }
  return res;
}

ReplicationResult replicate(const Instance& instance, const Solution& seed, const SwarmParams& params,
                            std::size_t replications, unsigned jobs) {
  if (replications < 1) throw ConfigError("need at least one replication");
  ReplicationResult out;
  out.runs.resize(replications);
  std::vector<std::exception_ptr> errors(replications);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < replications;) {
      try {
        SwarmParams p = params;
        p.seed = streamSeed(params.seed, r);
        out.runs[r] = runPso(instance, seed, p);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(replications)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t best = 0;
  double sum = 0.0;
  for (std::size_t r = 0; r < replications; ++r) {
    sum += out.runs[r].value;
    const auto& a = out.runs[r];
    const auto& b = out.runs[best];
    if (a.value > b.value || (a.value == b.value && a.best < b.best)) best = r;
  }
  out.bestOf = out.runs[best].best;
  out.maximum = out.runs[best].value;
  out.average = sum / static_cast<double>(replications);
  return out;
}

} // namespace locus
