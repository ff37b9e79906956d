#include "leadcon/greedy.hpp"

#include <chrono>
#include <functional>
#include <queue>
#include <tuple>

#include "leadcon/errors.hpp"

namespace leadcon {

namespace {

using Key = std::tuple<Rational, int, int>;

GreedyTrace::Run run_for(const GameInstance& inst, int lead, Sense sense, long& heap_ops) {
  const int r = inst.resource_count();
  GreedyTrace::Run run;
  run.leader_resource = lead;
  run.config.loads.assign(static_cast<std::size_t>(r), 0);
  auto marginal = [&](int j) {
    const int x = run.config.loads[static_cast<std::size_t>(j)] + 1 + (j == lead ? 1 : 0);
    return inst.cf(j, x);
  };
  auto flag = [&](int j) {
    const bool own = j == lead;
    return sense == Sense::Optimistic ? (own ? 1 : 0) : (own ? 0 : 1);
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (int j = 0; j < r; ++j) {
    heap.emplace(marginal(j), flag(j), j);
    ++heap_ops;
  }
  for (int step = 0; step < inst.followers; ++step) {
    const int j = std::get<2>(heap.top());
    heap.pop();
    ++run.config.loads[static_cast<std::size_t>(j)];
    run.picks.push_back(j);
    heap.emplace(marginal(j), flag(j), j);
    heap_ops += 2;
  }
  run.leader_cost = inst.cl(lead, run.config.loads[static_cast<std::size_t>(lead)] + 1);
  return run;
}

}  // namespace

GreedyResult solve_greedy(const GameInstance& inst, Sense sense, const GreedyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ClassFlags flags = classify(inst);
  if (!flags.symmetric) throw NotSymmetric();
  bool guarantee = flags.follower_weak_mono && flags.leader_weak_mono;
  if (sense == Sense::Pessimistic) guarantee = guarantee && flags.follower_strict_mono;
  if (!guarantee && opts.strict_checking) throw NotMonotonic();

  GreedyResult res;
  std::optional<std::size_t> best;
  for (int lead : inst.leader_actions) {
    res.trace.runs.push_back(run_for(inst, lead, sense, res.trace.heap_operations));
    const auto& run = res.trace.runs.back();
    if (!best || run.leader_cost < res.trace.runs[*best].leader_cost) best = res.trace.runs.size() - 1;
  }
  const auto& win = res.trace.runs[*best];
  SolveReport& rep = res.report;
  rep.solver = "greedy";
  rep.sense = sense;
  rep.strategy = LeaderStrategy::pure(inst, win.leader_resource);
  rep.config = win.config;
  rep.leader_cost = win.leader_cost;
  rep.guarantee = guarantee;
  rep.optimal = guarantee;
  rep.stats.steps = res.trace.heap_operations;
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace leadcon
