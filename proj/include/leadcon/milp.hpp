#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "leadcon/game.hpp"
#include "leadcon/lp.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

enum class MilpMode { PaperFaithful, Corrected };

std::string to_string(MilpMode m);
MilpMode parse_milp_mode(const std::string& text);

/// OSE model over leader probabilities alpha, load indicators y[i][v],
/// products z[i][v] = alpha_i * y[i][v] and, for asymmetric games, follower
/// assignments x. `y[i][k]` holds load level `v_lo + k`.
struct MilpModel {
  MilpMode mode = MilpMode::Corrected;
  bool symmetric = true;
  int v_lo = 1;
  LinearProgram lp;
  std::vector<int> binaries;
  std::vector<int> alpha;
  std::vector<std::vector<int>> y;
  std::vector<std::vector<int>> z;
  std::vector<std::vector<std::pair<int, int>>> x;  // follower -> (resource, variable)

  [[nodiscard]] int variable_count() const { return static_cast<int>(lp.vars.size()); }
  [[nodiscard]] int binary_count() const { return static_cast<int>(binaries.size()); }
  [[nodiscard]] int constraint_count() const { return static_cast<int>(lp.rows.size()); }
};

MilpModel build_milp(const GameInstance& inst, MilpMode mode);

/// Writes CPLEX LP text. Non-terminating coefficients are written as decimals
/// and the row is repeated with exact fractions in a `\exact` comment.
void export_lp_file(const MilpModel& model, std::ostream& out);

struct LpFile {
  LinearProgram lp;
  std::vector<std::string> binaries;
};

/// Reads the subset of LP text produced by export_lp_file; `\exact` comments
/// take precedence over the decimal row that follows them.
LpFile read_lp_file(std::istream& in);

struct BnBParams {
  long node_limit = 5'000'000;
  double time_limit_s = 3600.0;
  std::string branching = "most-fractional";  // or "first-fractional"
  std::string incumbent = "heuristic";        // or "none"
  MilpMode mode = MilpMode::Corrected;
  std::uint64_t heuristic_seed = 1;
  /// Corrected mode only: steer the search with a double-precision relaxation
  /// and prune with exact bounds recovered from its duals.
  bool float_guide = true;
};

/// Branch-and-bound on the model's LP relaxation. A hit limit yields status
/// "limit" with the incumbent (if any) and the best bound.
SolveReport solve_ose_milp(const GameInstance& inst, const BnBParams& params = {});

}  // namespace leadcon
