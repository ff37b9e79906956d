#include "leadcon/oracle.hpp"

#include <chrono>

#include "leadcon/errors.hpp"

namespace leadcon {

namespace {

long long binomial_capped(long long n, long long k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1;
  long long exact = 1;
  for (long long i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
    exact = exact * (n - k + i) / i;
  }
  return exact;
}

void compositions(int total, int parts, std::vector<int>& cur, int idx, std::vector<Outcome>& out) {
  if (idx == parts - 1) {
    cur[static_cast<std::size_t>(idx)] = total;
    out.push_back(Outcome{Configuration{cur}, std::nullopt});
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[static_cast<std::size_t>(idx)] = v;
    compositions(total - v, parts, cur, idx + 1, out);
  }
}

bool outcome_is_ne(const GameInstance& inst, const LeaderStrategy& sigma, const Outcome& o) {
  return o.profile ? is_nash(inst, sigma, *o.profile).is_equilibrium : is_nash_config(inst, sigma, o.config).is_equilibrium;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void fill_outcome(SolveReport& rep, const Outcome& o) {
  rep.config = o.config;
  rep.profile = o.profile;
}

}  // namespace

std::vector<Outcome> enumerate_outcomes(const GameInstance& inst, const OracleOptions& opts) {
  std::vector<Outcome> out;
  const int r = inst.resource_count();
  if (classify(inst).symmetric) {
    if (binomial_capped(inst.followers + r - 1, r - 1, opts.size_guard) > opts.size_guard) {
      throw SizeGuardExceeded("outcome space exceeds the size guard");
    }
    std::vector<int> cur(static_cast<std::size_t>(r));
    compositions(inst.followers, r, cur, 0, out);
    return out;
  }
  long double space = 1;
  for (const auto& a : inst.follower_actions) {
    space *= static_cast<long double>(a.size());
    if (space > static_cast<long double>(opts.size_guard)) throw SizeGuardExceeded("outcome space exceeds the size guard");
  }
  std::vector<std::size_t> digit(static_cast<std::size_t>(inst.followers), 0);
  for (;;) {
    FollowerProfile p;
    for (int q = 0; q < inst.followers; ++q) {
      p.assignment.push_back(inst.follower_actions[static_cast<std::size_t>(q)][digit[static_cast<std::size_t>(q)]]);
    }
    Configuration c = config_of(inst, p);
    out.push_back(Outcome{std::move(c), std::move(p)});
    int q = inst.followers - 1;
    while (q >= 0) {
      auto& d = digit[static_cast<std::size_t>(q)];
      if (++d < inst.follower_actions[static_cast<std::size_t>(q)].size()) break;
      d = 0;
      --q;
    }
    if (q < 0) break;
  }
  return out;
}

std::vector<Outcome> enumerate_ne_outcomes(const GameInstance& inst, const LeaderStrategy& sigma, const OracleOptions& opts) {
  sigma.validate(inst);
  std::vector<Outcome> all = enumerate_outcomes(inst, opts);
  std::vector<Outcome> ne;
  for (auto& o : all) {
    if (outcome_is_ne(inst, sigma, o)) ne.push_back(std::move(o));
  }
  return ne;
}

LinearProgram outcome_lp(const GameInstance& inst, const Outcome& outcome) {
  const int r = inst.resource_count();
  const auto& nu = outcome.config.loads;
  LinearProgram lp;
  for (int i = 0; i < r; ++i) {
    const Rational ub = inst.leader_can_use(i) ? Rational(1) : Rational(0);
    lp.add_variable("alpha_" + inst.resources[static_cast<std::size_t>(i)], Rational(0), ub,
                    inst.cl(i, nu[static_cast<std::size_t>(i)] + 1));
  }
  // A deviation row depends only on (from, to), so pairs are deduplicated.
  std::vector<char> need(static_cast<std::size_t>(r * r), 0);
  if (outcome.profile) {
    for (int p = 0; p < inst.followers; ++p) {
      const int i = outcome.profile->assignment[static_cast<std::size_t>(p)];
      for (int j : inst.follower_actions[static_cast<std::size_t>(p)]) {
        if (j != i) need[static_cast<std::size_t>(i * r + j)] = 1;
      }
    }
  } else {
    for (int i = 0; i < r; ++i) {
      if (nu[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < r; ++j) {
        if (j != i) need[static_cast<std::size_t>(i * r + j)] = 1;
      }
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (!need[static_cast<std::size_t>(i * r + j)]) continue;
      const int vi = nu[static_cast<std::size_t>(i)];
      const int vj = nu[static_cast<std::size_t>(j)];
      // c_i(vi) + a_i (c_i(vi+1) - c_i(vi)) <= c_j(vj+1) + a_j (c_j(vj+2) - c_j(vj+1))
      std::vector<std::pair<int, Rational>> terms;
      const Rational di = inst.cf(i, vi + 1) - inst.cf(i, vi);
      const Rational dj = inst.cf(j, vj + 2) - inst.cf(j, vj + 1);
      if (!di.is_zero()) terms.emplace_back(i, di);
      if (!dj.is_zero()) terms.emplace_back(j, -dj);
      lp.add_row("ne_" + std::to_string(i) + "_" + std::to_string(j), std::move(terms), Relation::LessEq,
                 inst.cf(j, vj + 1) - inst.cf(i, vi));
    }
  }
  std::vector<std::pair<int, Rational>> simplex;
  for (int i = 0; i < r; ++i) simplex.emplace_back(i, Rational(1));
  lp.add_row("simplex", std::move(simplex), Relation::Equal, Rational(1));
  return lp;
}

LpOutcome min_cost_alpha_for_outcome(const GameInstance& inst, const Outcome& outcome) {
  return solve_lp(outcome_lp(inst, outcome));
}

SolveReport brute_force_ose(const GameInstance& inst, const OracleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.solver = "oracle";
  rep.sense = Sense::Optimistic;
  rep.oracle = true;
  const auto outcomes = enumerate_outcomes(inst, opts);
  std::optional<Rational> best;
  for (const auto& o : outcomes) {
    const LpOutcome lp = min_cost_alpha_for_outcome(inst, o);
    ++rep.stats.lp_solves;
    rep.stats.pivots += lp.pivots;
    if (!lp.certified) throw std::logic_error("outcome LP failed its certificate check");
    if (lp.status != LpStatus::Optimal) continue;
    if (!best || lp.value < *best) {
      best = lp.value;
      rep.strategy.probabilities = lp.point;
      fill_outcome(rep, o);
    }
  }
  rep.stats.nodes = static_cast<long>(outcomes.size());
  if (!best) {
    rep.status = "infeasible";
  } else {
    rep.leader_cost = best;
    rep.optimal = true;
  }
  rep.stats.wall_ms = ms_since(t0);
  return rep;
}

SolveReport brute_force_pure(const GameInstance& inst, Sense sense, const OracleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.solver = "oracle-pure";
  rep.sense = sense;
  rep.oracle = true;
  const auto outcomes = enumerate_outcomes(inst, opts);
  std::optional<Rational> best;
  for (int i : inst.leader_actions) {
    const LeaderStrategy sigma = LeaderStrategy::pure(inst, i);
    std::optional<Rational> inner;
    const Outcome* pick = nullptr;
    for (const auto& o : outcomes) {
      if (!outcome_is_ne(inst, sigma, o)) continue;
      const Rational v = inst.cl(i, o.config.loads[static_cast<std::size_t>(i)] + 1);
      const bool better = !inner || (sense == Sense::Optimistic ? v < *inner : v > *inner);
      if (better) {
        inner = v;
        pick = &o;
      }
    }
    if (!inner) continue;
    if (!best || *inner < *best) {
      best = inner;
      rep.strategy = sigma;
      fill_outcome(rep, *pick);
    }
  }
  rep.stats.nodes = static_cast<long>(outcomes.size());
  if (!best) {
    rep.status = "infeasible";
  } else {
    rep.leader_cost = best;
    rep.optimal = true;
  }
  rep.stats.wall_ms = ms_since(t0);
  return rep;
}

Rational pessimistic_value_at(const GameInstance& inst, const LeaderStrategy& sigma, const OracleOptions& opts) {
  const auto ne = enumerate_ne_outcomes(inst, sigma, opts);
  if (ne.empty()) throw std::logic_error("follower game without a pure equilibrium");
  std::optional<Rational> worst;
  for (const auto& o : ne) {
    const Rational v = leader_cost(inst, sigma, o.config);
    if (!worst || v > *worst) worst = v;
  }
  return *worst;
}

namespace {

void scan_grid(const GameInstance& inst, const std::vector<Outcome>& outcomes, int resolution, ScanReport& rep) {
  const auto& acts = inst.leader_actions;
  const int k = static_cast<int>(acts.size());
  std::optional<Rational> best;
  std::vector<int> w(static_cast<std::size_t>(k), 0);
  auto evaluate = [&]() {
    LeaderStrategy s;
    s.probabilities.assign(static_cast<std::size_t>(inst.resource_count()), Rational(0));
    for (int a = 0; a < k; ++a) s.probabilities[static_cast<std::size_t>(acts[static_cast<std::size_t>(a)])] = Rational(w[static_cast<std::size_t>(a)], resolution);
    std::optional<Rational> worst;
    for (const auto& o : outcomes) {
      if (!outcome_is_ne(inst, s, o)) continue;
      const Rational v = leader_cost(inst, s, o.config);
      if (!worst || v > *worst) worst = v;
    }
    ++rep.points;
    if (worst && (!best || *worst < *best)) {
      best = worst;
      rep.argmin = s;
    }
  };
  if (k == 1) {
    w[0] = resolution;
    evaluate();
  } else if (k == 2) {
    for (int a = 0; a <= resolution; ++a) {
      w[0] = a;
      w[1] = resolution - a;
      evaluate();
    }
  } else {
    for (int a = 0; a <= resolution; ++a) {
      for (int b = 0; a + b <= resolution; ++b) {
        w[0] = a;
        w[1] = b;
        w[2] = resolution - a - b;
        evaluate();
      }
    }
  }
  rep.infimum_estimate = *best;
}

}  // namespace

ScanReport pessimistic_grid_scan(const GameInstance& inst, int resolution, const OracleOptions& opts) {
  if (resolution < 1) throw ValidationError("resolution must be positive");
  if (inst.leader_actions.size() > 3) throw ValidationError("grid scan supports at most three leader actions");
  const auto outcomes = enumerate_outcomes(inst, opts);
  ScanReport rep;
  rep.resolution = resolution;
  scan_grid(inst, outcomes, resolution, rep);
  ScanReport fine;
  scan_grid(inst, outcomes, 2 * resolution, fine);
  rep.refined_estimate = fine.infimum_estimate;
  rep.attained = !(fine.infimum_estimate < rep.infimum_estimate);
  rep.points += fine.points;
  return rep;
}

}  // namespace leadcon
