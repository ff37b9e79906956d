#include "leadcon/dynamics.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "leadcon/forge.hpp"

namespace leadcon {

namespace {

struct State {
  const GameInstance& inst;
  std::vector<int> at;    // player -> resource, player 0 is the leader
  std::vector<int> load;  // total players per resource

  const std::vector<int>& actions(int pl) const {
    return pl == 0 ? inst.leader_actions : inst.follower_actions[static_cast<std::size_t>(pl - 1)];
  }
  const Rational& cost(int pl, int i, int x) const { return pl == 0 ? inst.cl(i, x) : inst.cf(i, x); }

  /// Strictly better resource for `pl`, lowest index among the best, or -1.
  int best_response(int pl) const {
    const int cur = at[static_cast<std::size_t>(pl)];
    const Rational& now = cost(pl, cur, load[static_cast<std::size_t>(cur)]);
    int best = -1;
    const Rational* best_cost = &now;
    for (int j : actions(pl)) {
      if (j == cur) continue;
      const Rational& c = cost(pl, j, load[static_cast<std::size_t>(j)] + 1);
      if (c < *best_cost) {
        best = j;
        best_cost = &c;
      }
    }
    return best;
  }

  Rational potential() const {
    Rational phi;
    for (int i = 0; i < inst.resource_count(); ++i) {
      for (int x = 1; x <= load[static_cast<std::size_t>(i)]; ++x) phi += inst.cf(i, x);
    }
    return phi;
  }
};

bool same_tables(const GameInstance& inst) {
  for (int i = 0; i < inst.resource_count(); ++i) {
    if (inst.leader_costs[static_cast<std::size_t>(i)] != inst.follower_costs[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

}  // namespace

SolveReport run_best_response(const GameInstance& inst, std::uint64_t seed, const DynamicsBudget& budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = inst.players();
  State st{inst, std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(inst.resource_count()), 0)};
  std::mt19937_64 rng(seed);
  for (int pl = 0; pl < n; ++pl) {
    const auto& a = st.actions(pl);
    const int i = a[uniform_int(rng, 0, a.size() - 1)];
    st.at[static_cast<std::size_t>(pl)] = i;
    ++st.load[static_cast<std::size_t>(i)];
  }
  const bool track_potential = same_tables(inst);
  Rational phi = track_potential ? st.potential() : Rational(0);

  SolveReport rep;
  rep.solver = "brd";
  rep.heuristic = true;
  rep.optimal = false;
  rep.converged = false;
  long moves = 0;
  for (;;) {
    int mover = -1;
    int target = -1;
    for (int pl = 0; pl < n && mover < 0; ++pl) {
      const int j = st.best_response(pl);
      if (j >= 0) {
        mover = pl;
        target = j;
      }
    }
    if (mover < 0) {
      rep.converged = true;
      break;
    }
    if (moves >= budget.max_deviations ||
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > budget.wall_limit_s) {
      break;
    }
    const int from = st.at[static_cast<std::size_t>(mover)];
    const Rational before = st.cost(mover, from, st.load[static_cast<std::size_t>(from)]);
    const Rational after = st.cost(mover, target, st.load[static_cast<std::size_t>(target)] + 1);
    if (!(after < before)) throw std::logic_error("best-response move without strict improvement");
    --st.load[static_cast<std::size_t>(from)];
    ++st.load[static_cast<std::size_t>(target)];
    st.at[static_cast<std::size_t>(mover)] = target;
    ++moves;
    if (track_potential) {
      const Rational next = st.potential();
      if (!(next < phi)) throw std::logic_error("potential failed to decrease");
      phi = next;
    }
  }

  const int lead = st.at[0];
  rep.strategy = LeaderStrategy::pure(inst, lead);
  FollowerProfile prof;
  prof.assignment.assign(st.at.begin() + 1, st.at.end());
  rep.config = config_of(inst, prof);
  rep.profile = prof;
  rep.leader_cost = inst.cl(lead, st.load[static_cast<std::size_t>(lead)]);
  rep.stats.steps = moves;
  rep.status = rep.converged ? "feasible" : "limit";
  rep.extra["seed"] = seed;
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace leadcon
