#pragma once

#include <cstdint>

#include "leadcon/game.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

struct DynamicsBudget {
  long max_deviations = 100'000;
  double wall_limit_s = 600.0;
};

/// Best-response dynamics over all n players from a seeded random start. The
/// leader is player 0 and moves on her own cost table. The report holds the
/// leader's resource as a pure strategy and the followers' profile.
SolveReport run_best_response(const GameInstance& inst, std::uint64_t seed, const DynamicsBudget& budget = {});

}  // namespace leadcon
