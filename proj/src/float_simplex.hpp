#pragma once

#include <vector>

#include "leadcon/lp.hpp"

namespace leadcon::detail {

/// Double-precision bounded dual simplex on a dense tableau. Used only to
/// steer branch-and-bound; its output is never trusted without an exact check.
class FloatSimplex {
 public:
  enum class Status { Optimal, Infeasible, Failed };

  struct Result {
    Status status = Status::Failed;
    std::vector<double> x;  // structural values
    std::vector<double> y;  // row multipliers (optimal) or Farkas ray (infeasible)
    double value = 0.0;
    long pivots = 0;
  };

  explicit FloatSimplex(const LinearProgram& lp);

  void set_bounds(int var, double lo, double up);
  Result solve(long max_pivots);
  [[nodiscard]] long total_pivots() const { return total_pivots_; }

 private:
  enum class At : unsigned char { Lower, Upper, Zero };

  double& t(int r, int c) { return tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_) + static_cast<std::size_t>(c)]; }

  Result solve_once(long max_pivots);
  void reset();
  void place_nonbasic(int c);
  void refactor();
  void recompute_values();
  void recompute_reduced_costs();
  void perturb();
  void pivot(int r, int c);
  /// Flips nonbasic bounded variables to the bound their reduced cost asks for.
  bool dual_feasible(bool lenient = false);
  double residual() const;

  int ns_;
  int m_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<double> cost_;
  std::vector<double> work_;  // costs in use, possibly perturbed
  std::vector<double> lo_, up_;  // +-inf when absent
  std::vector<double> tab_;
  std::vector<double> d_;
  std::vector<double> val_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<int> where_;
  std::vector<At> at_;
  long since_refactor_ = 0;
  long total_pivots_ = 0;
  unsigned rng_ = 12345u;
};

}  // namespace leadcon::detail
