#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leadcon/rational.hpp"

namespace leadcon {

/// Costs at congestion x = 1..n stored at index x-1; c(0) = 0 implicitly and
/// x > n repeats the last entry.
using CostTable = std::vector<Rational>;

enum class Sense { Optimistic, Pessimistic };

std::string to_string(Sense s);
Sense parse_sense(const std::string& text);

/// A Stackelberg singleton congestion game with one leader and
/// `followers` followers. Resources are addressed by index.
struct GameInstance {
  int followers = 0;
  std::vector<std::string> resources;
  std::vector<int> leader_actions;
  std::vector<std::vector<int>> follower_actions;
  std::vector<CostTable> leader_costs;
  std::vector<CostTable> follower_costs;
  nlohmann::json metadata = nlohmann::json::object();

  [[nodiscard]] int players() const { return followers + 1; }
  [[nodiscard]] int resource_count() const { return static_cast<int>(resources.size()); }

  /// Follower cost at congestion x (all players counted), clamped beyond n.
  [[nodiscard]] const Rational& cf(int i, int x) const;
  /// Leader cost at congestion x, clamped beyond n.
  [[nodiscard]] const Rational& cl(int i, int x) const;

  [[nodiscard]] bool leader_can_use(int i) const;
  [[nodiscard]] bool follower_can_use(int p, int i) const;
  [[nodiscard]] std::optional<int> resource_index(const std::string& id) const;

  /// Throws ValidationError on any structural problem.
  void validate() const;
};

/// Probability per resource index.
struct LeaderStrategy {
  std::vector<Rational> probabilities;

  static LeaderStrategy pure(const GameInstance& inst, int resource);
  [[nodiscard]] bool is_pure() const;
  [[nodiscard]] std::optional<int> pure_resource() const;
  void validate(const GameInstance& inst) const;
};

struct FollowerProfile {
  std::vector<int> assignment;
  void validate(const GameInstance& inst) const;
};

struct Configuration {
  std::vector<int> loads;
  void validate(const GameInstance& inst) const;
};

struct ClassFlags {
  bool symmetric = false;
  bool leader_weak_mono = false;
  bool follower_weak_mono = false;
  bool follower_strict_mono = false;
};

struct Deviation {
  int follower = -1;  // -1 when the check ran on a bare configuration
  int from = -1;
  int to = -1;
  Rational current_cost;
  Rational deviation_cost;
};

struct VerifyReport {
  bool is_equilibrium = true;
  std::optional<Deviation> witness;
};

Rational expected_follower_cost(const GameInstance& inst, const LeaderStrategy& sigma, int i, int x);
Rational leader_cost(const GameInstance& inst, const LeaderStrategy& sigma, const Configuration& config);
Configuration config_of(const GameInstance& inst, const FollowerProfile& profile);
VerifyReport is_nash(const GameInstance& inst, const LeaderStrategy& sigma, const FollowerProfile& profile);
/// Only meaningful for symmetric instances, where the verdict depends on loads alone.
VerifyReport is_nash_config(const GameInstance& inst, const LeaderStrategy& sigma, const Configuration& config);
ClassFlags classify(const GameInstance& inst);

/// Expands a symmetric configuration into a profile, filling resources in index order.
FollowerProfile profile_from_config(const GameInstance& inst, const Configuration& config);

bool weakly_monotone(const CostTable& t);
bool strictly_monotone(const CostTable& t);

}  // namespace leadcon
