#include "leadcon/game.hpp"

#include <algorithm>

#include "leadcon/errors.hpp"

namespace leadcon {

namespace {

const Rational kZero{0};

const Rational& table_at(const CostTable& t, int x) {
  if (x <= 0) return kZero;
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(x), t.size()) - 1;
  return t[idx];
}

void check_action_set(const GameInstance& inst, const std::vector<int>& set, const std::string& who) {
  if (set.empty()) throw ValidationError(who + " has an empty action set");
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] < 0 || set[k] >= inst.resource_count()) throw ValidationError(who + " uses an unknown resource");
    if (k > 0 && set[k] <= set[k - 1]) throw ValidationError(who + " action set must be sorted and duplicate-free");
  }
}

}  // namespace

std::string to_string(Sense s) { return s == Sense::Optimistic ? "opt" : "pes"; }

Sense parse_sense(const std::string& text) {
  if (text == "opt" || text == "optimistic") return Sense::Optimistic;
  if (text == "pes" || text == "pessimistic") return Sense::Pessimistic;
  throw ValidationError("unknown sense '" + text + "'");
}

const Rational& GameInstance::cf(int i, int x) const { return table_at(follower_costs[static_cast<std::size_t>(i)], x); }
const Rational& GameInstance::cl(int i, int x) const { return table_at(leader_costs[static_cast<std::size_t>(i)], x); }

bool GameInstance::leader_can_use(int i) const {
  return std::binary_search(leader_actions.begin(), leader_actions.end(), i);
}

bool GameInstance::follower_can_use(int p, int i) const {
  const auto& a = follower_actions[static_cast<std::size_t>(p)];
  return std::binary_search(a.begin(), a.end(), i);
}

std::optional<int> GameInstance::resource_index(const std::string& id) const {
  for (int i = 0; i < resource_count(); ++i) {
    if (resources[static_cast<std::size_t>(i)] == id) return i;
  }
  return std::nullopt;
}

void GameInstance::validate() const {
  if (followers < 0) throw ValidationError("follower count must be nonnegative");
  if (resources.empty()) throw ValidationError("at least one resource is required");
  for (std::size_t a = 0; a < resources.size(); ++a) {
    for (std::size_t b = a + 1; b < resources.size(); ++b) {
      if (resources[a] == resources[b]) throw ValidationError("duplicate resource id '" + resources[a] + "'");
    }
  }
  check_action_set(*this, leader_actions, "leader");
  if (static_cast<int>(follower_actions.size()) != followers) {
    throw ValidationError("follower_actions must list one set per follower");
  }
  for (int p = 0; p < followers; ++p) {
    check_action_set(*this, follower_actions[static_cast<std::size_t>(p)], "follower " + std::to_string(p));
  }
  const auto r = static_cast<std::size_t>(resource_count());
  if (leader_costs.size() != r || follower_costs.size() != r) {
    throw ValidationError("cost tables must be given for every resource");
  }
  const auto n = static_cast<std::size_t>(players());
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto* t : {&leader_costs[i], &follower_costs[i]}) {
      if (t->size() != n) throw ValidationError("cost table of '" + resources[i] + "' must have n entries");
      for (const auto& v : *t) {
        if (v.sign() < 0) throw ValidationError("negative cost on resource '" + resources[i] + "'");
      }
    }
  }
}

LeaderStrategy LeaderStrategy::pure(const GameInstance& inst, int resource) {
  LeaderStrategy s;
  s.probabilities.assign(static_cast<std::size_t>(inst.resource_count()), Rational(0));
  s.probabilities[static_cast<std::size_t>(resource)] = Rational(1);
  return s;
}

bool LeaderStrategy::is_pure() const { return pure_resource().has_value(); }

std::optional<int> LeaderStrategy::pure_resource() const {
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] == Rational(1)) return static_cast<int>(i);
  }
  return std::nullopt;
}

void LeaderStrategy::validate(const GameInstance& inst) const {
  if (static_cast<int>(probabilities.size()) != inst.resource_count()) {
    throw ValidationError("leader strategy length differs from resource count");
  }
  Rational total;
  for (int i = 0; i < inst.resource_count(); ++i) {
    const Rational& p = probabilities[static_cast<std::size_t>(i)];
    if (p.sign() < 0 || p > Rational(1)) throw ValidationError("leader probability outside [0,1]");
    if (!p.is_zero() && !inst.leader_can_use(i)) throw ValidationError("leader strategy leaves the leader action set");
    total += p;
  }
  if (total != Rational(1)) throw ValidationError("leader probabilities must sum to 1, got " + total.to_string());
}

void FollowerProfile::validate(const GameInstance& inst) const {
  if (static_cast<int>(assignment.size()) != inst.followers) {
    throw ValidationError("profile length differs from follower count");
  }
  for (int p = 0; p < inst.followers; ++p) {
    const int i = assignment[static_cast<std::size_t>(p)];
    if (i < 0 || i >= inst.resource_count() || !inst.follower_can_use(p, i)) {
      throw ValidationError("follower " + std::to_string(p) + " assigned outside her action set");
    }
  }
}

void Configuration::validate(const GameInstance& inst) const {
  if (static_cast<int>(loads.size()) != inst.resource_count()) {
    throw ValidationError("configuration length differs from resource count");
  }
  long total = 0;
  for (int v : loads) {
    if (v < 0) throw ValidationError("negative load in configuration");
    total += v;
  }
  if (total != inst.followers) throw ValidationError("configuration loads must sum to the follower count");
}

Rational expected_follower_cost(const GameInstance& inst, const LeaderStrategy& sigma, int i, int x) {
  if (i < 0 || i >= inst.resource_count()) throw ValidationError("unknown resource index");
  if (x < 0 || x > inst.followers) throw ValidationError("congestion out of range");
  const Rational& s = sigma.probabilities[static_cast<std::size_t>(i)];
  const Rational& lo = inst.cf(i, x);
  if (s.is_zero()) return lo;
  const Rational& hi = inst.cf(i, x + 1);
  return lo + s * (hi - lo);
}

Rational leader_cost(const GameInstance& inst, const LeaderStrategy& sigma, const Configuration& config) {
  if (static_cast<int>(config.loads.size()) != inst.resource_count()) {
    throw ValidationError("configuration length differs from resource count");
  }
  Rational total;
  for (int i = 0; i < inst.resource_count(); ++i) {
    const Rational& s = sigma.probabilities[static_cast<std::size_t>(i)];
    if (!s.is_zero()) total += s * inst.cl(i, config.loads[static_cast<std::size_t>(i)] + 1);
  }
  return total;
}

Configuration config_of(const GameInstance& inst, const FollowerProfile& profile) {
  Configuration c;
  c.loads.assign(static_cast<std::size_t>(inst.resource_count()), 0);
  for (int a : profile.assignment) ++c.loads[static_cast<std::size_t>(a)];
  return c;
}

VerifyReport is_nash(const GameInstance& inst, const LeaderStrategy& sigma, const FollowerProfile& profile) {
  profile.validate(inst);
  const Configuration c = config_of(inst, profile);
  const int r = inst.resource_count();
  std::vector<Rational> stay(static_cast<std::size_t>(r));
  std::vector<Rational> enter(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    const int v = c.loads[static_cast<std::size_t>(i)];
    if (v > 0) stay[static_cast<std::size_t>(i)] = expected_follower_cost(inst, sigma, i, v);
    if (v < inst.followers) enter[static_cast<std::size_t>(i)] = expected_follower_cost(inst, sigma, i, v + 1);
  }
  VerifyReport rep;
  for (int p = 0; p < inst.followers; ++p) {
    const int i = profile.assignment[static_cast<std::size_t>(p)];
    for (int j : inst.follower_actions[static_cast<std::size_t>(p)]) {
      if (j == i) continue;
      if (enter[static_cast<std::size_t>(j)] < stay[static_cast<std::size_t>(i)]) {
        rep.is_equilibrium = false;
        rep.witness = Deviation{p, i, j, stay[static_cast<std::size_t>(i)], enter[static_cast<std::size_t>(j)]};
        return rep;
      }
    }
  }
  return rep;
}

VerifyReport is_nash_config(const GameInstance& inst, const LeaderStrategy& sigma, const Configuration& config) {
  config.validate(inst);
  const int r = inst.resource_count();
  VerifyReport rep;
  for (int i = 0; i < r; ++i) {
    const int vi = config.loads[static_cast<std::size_t>(i)];
    if (vi == 0) continue;
    const Rational stay = expected_follower_cost(inst, sigma, i, vi);
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      const Rational enter = expected_follower_cost(inst, sigma, j, config.loads[static_cast<std::size_t>(j)] + 1);
      if (enter < stay) {
        rep.is_equilibrium = false;
        rep.witness = Deviation{-1, i, j, stay, enter};
        return rep;
      }
    }
  }
  return rep;
}

bool weakly_monotone(const CostTable& t) {
  for (std::size_t x = 1; x < t.size(); ++x) {
    if (t[x] < t[x - 1]) return false;
  }
  return true;
}

bool strictly_monotone(const CostTable& t) {
  for (std::size_t x = 1; x < t.size(); ++x) {
    if (!(t[x - 1] < t[x])) return false;
  }
  return true;
}

ClassFlags classify(const GameInstance& inst) {
  ClassFlags f;
  const auto r = static_cast<std::size_t>(inst.resource_count());
  f.symmetric = inst.leader_actions.size() == r;
  for (const auto& a : inst.follower_actions) f.symmetric = f.symmetric && a.size() == r;
  f.leader_weak_mono = std::all_of(inst.leader_costs.begin(), inst.leader_costs.end(), weakly_monotone);
  f.follower_weak_mono = std::all_of(inst.follower_costs.begin(), inst.follower_costs.end(), weakly_monotone);
  f.follower_strict_mono = std::all_of(inst.follower_costs.begin(), inst.follower_costs.end(), strictly_monotone);
  return f;
}

FollowerProfile profile_from_config(const GameInstance& inst, const Configuration& config) {
  config.validate(inst);
  FollowerProfile p;
  for (int i = 0; i < inst.resource_count(); ++i) {
    for (int k = 0; k < config.loads[static_cast<std::size_t>(i)]; ++k) p.assignment.push_back(i);
  }
  return p;
}

}  // namespace leadcon
