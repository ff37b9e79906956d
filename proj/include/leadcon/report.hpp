#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "leadcon/game.hpp"

namespace leadcon {

struct SolveStats {
  long nodes = 0;
  long lp_solves = 0;
  long pivots = 0;
  long steps = 0;
  double wall_ms = 0.0;
};

/// Result of any solver. `status` is "optimal", "feasible", "limit" or "infeasible".
struct SolveReport {
  std::string solver;
  Sense sense = Sense::Optimistic;
  std::string status = "optimal";
  LeaderStrategy strategy;
  Configuration config;
  std::optional<FollowerProfile> profile;
  std::optional<Rational> leader_cost;
  std::optional<Rational> bound;
  bool optimal = false;
  bool guarantee = true;
  bool oracle = false;
  bool heuristic = false;
  bool converged = true;
  bool exact = true;
  SolveStats stats;
  nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json report_to_json(const GameInstance& inst, const SolveReport& rep);

/// Re-derives the leader cost and the equilibrium property from the instance.
/// Returns an empty string when everything checks out, else a description.
std::string recheck_report(const GameInstance& inst, const SolveReport& rep);

}  // namespace leadcon
