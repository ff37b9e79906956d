#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "leadcon/game.hpp"
#include "leadcon/report.hpp"

namespace leadcon {

/// Separable objective: sum over resources h of g[h][k], k = followers on h.
struct DpObjective {
  std::vector<std::vector<Rational>> g;
  bool maximize = false;
};

struct DpResult {
  bool feasible = false;
  Rational value;
  Configuration config;
  long states = 0;
};

/// Optimal follower equilibrium of a leaderless symmetric game.
///
/// `chat[h][x]` is the cost of resource h at congestion x for x = 0..F+1,
/// where F is the follower count. States (h, B, M, V) carry the smallest
/// deviation cost M offered by resources already fixed and the largest cost
/// V paid on them; a load k on resource h is admissible iff chat[h][k] <= M
/// (when k > 0) and chat[h][k+1] >= V.
class DpSolver {
 public:
  DpSolver(std::vector<std::vector<Rational>> chat, int followers, DpObjective objective);

  DpResult solve();

  /// Value of A(h, B, M, V) with ranks into `values()`; `m_rank == values().size()`
  /// means no bound yet, `v_rank == 0` means no bound yet, else value v_rank-1.
  std::optional<Rational> state_value(int h, int b, int m_rank, int v_rank);
  [[nodiscard]] const std::vector<Rational>& values() const { return vals_; }
  [[nodiscard]] long states() const { return static_cast<long>(memo_.size()); }

 private:
  struct Entry {
    bool feasible = false;
    Rational value;
    int choice = -1;
  };

  const Entry& eval(int h, int b, int mi, int vi);
  int rank(const Rational& v) const;
  static std::uint64_t key(int h, int b, int mi, int vi);

  std::vector<std::vector<Rational>> chat_;
  std::vector<std::vector<int>> rank_;  // rank of chat_[h][x]
  int followers_;
  DpObjective obj_;
  std::vector<Rational> vals_;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

DpResult dp_optimal_ne(const std::vector<std::vector<Rational>>& chat, int followers, const DpObjective& objective);

/// chat for a leader committed to resource `lead` (or -1 for no leader).
std::vector<std::vector<Rational>> shifted_costs(const GameInstance& inst, int lead);
DpObjective social_cost_objective(const std::vector<std::vector<Rational>>& chat, int followers, bool maximize = false);
DpObjective leader_objective(const GameInstance& inst, int lead, bool maximize);

/// Best pure commitment for symmetric games: one DP per leader action.
SolveReport solve_pure_commitment(const GameInstance& inst, Sense sense);

}  // namespace leadcon
