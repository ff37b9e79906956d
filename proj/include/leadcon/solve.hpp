#pragma once

#include <cstdint>
#include <string>

#include "leadcon/dynamics.hpp"
#include "leadcon/game.hpp"
#include "leadcon/milp.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

struct SolveOptions {
  std::string algo = "auto";  // auto|greedy|dp|milp|oracle|brd
  Sense sense = Sense::Optimistic;
  bool pure = false;
  MilpMode mode = MilpMode::Corrected;
  std::uint64_t seed = 1;
  long size_guard = 200000;
  BnBParams milp;
  DynamicsBudget dynamics;
};

/// Algorithm `auto` resolves to for this instance. Throws ValidationError for
/// pessimistic mixed commitments outside the greedy class.
std::string pick_algorithm(const GameInstance& inst, const SolveOptions& opts);

/// Runs the chosen solver. Throws ValidationError on an unsupported
/// combination (for example `dp` on an asymmetric game).
SolveReport solve(const GameInstance& inst, const SolveOptions& opts);

}  // namespace leadcon
