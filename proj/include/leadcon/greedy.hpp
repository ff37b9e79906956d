#pragma once

#include <utility>
#include <vector>

#include "leadcon/game.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

struct GreedyTrace {
  struct Run {
    int leader_resource = -1;
    Configuration config;
    Rational leader_cost;
    std::vector<int> picks;  // resource chosen at each step
  };
  std::vector<Run> runs;
  long heap_operations = 0;
};

struct GreedyOptions {
  /// Throw NotMonotonic instead of flagging `guarantee: false`.
  bool strict_checking = false;
};

struct GreedyResult {
  SolveReport report;
  GreedyTrace trace;
};

/// Pure-commitment greedy for symmetric games. Each follower in turn takes a
/// resource of minimum marginal cost; ties go away from (optimistic) or onto
/// (pessimistic) the leader's resource, then to the lowest index.
GreedyResult solve_greedy(const GameInstance& inst, Sense sense, const GreedyOptions& opts = {});

}  // namespace leadcon
