#pragma once

#include <optional>
#include <vector>

#include "leadcon/game.hpp"
#include "leadcon/lp.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

struct OracleOptions {
  long size_guard = 200000;
};

/// A follower outcome: a configuration, plus the profile for asymmetric games.
struct Outcome {
  Configuration config;
  std::optional<FollowerProfile> profile;
};

/// Every outcome of the followers' game (compositions for symmetric games,
/// the product of action sets otherwise). Throws SizeGuardExceeded.
std::vector<Outcome> enumerate_outcomes(const GameInstance& inst, const OracleOptions& opts = {});
std::vector<Outcome> enumerate_ne_outcomes(const GameInstance& inst, const LeaderStrategy& sigma,
                                           const OracleOptions& opts = {});

LinearProgram outcome_lp(const GameInstance& inst, const Outcome& outcome);
LpOutcome min_cost_alpha_for_outcome(const GameInstance& inst, const Outcome& outcome);

SolveReport brute_force_ose(const GameInstance& inst, const OracleOptions& opts = {});
SolveReport brute_force_pure(const GameInstance& inst, Sense sense, const OracleOptions& opts = {});

/// Worst equilibrium leader cost for a fixed commitment.
Rational pessimistic_value_at(const GameInstance& inst, const LeaderStrategy& sigma, const OracleOptions& opts = {});

struct ScanReport {
  int resolution = 0;
  long points = 0;
  Rational infimum_estimate;
  LeaderStrategy argmin;
  /// False when halving the grid step strictly lowers the estimate, the
  /// pattern of an infimum that is approached but not reached.
  bool attained = true;
  Rational refined_estimate;
  bool exact = false;
};

ScanReport pessimistic_grid_scan(const GameInstance& inst, int resolution, const OracleOptions& opts = {});

}  // namespace leadcon
