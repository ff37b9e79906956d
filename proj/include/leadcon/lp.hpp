#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leadcon/rational.hpp"

namespace leadcon {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearProgram {
  struct Variable {
    std::string name;
    std::optional<Rational> lower;  // nullopt = -inf
    std::optional<Rational> upper;  // nullopt = +inf
    Rational cost;
  };
  struct Row {
    std::string name;
    std::vector<std::pair<int, Rational>> terms;
    Relation rel = Relation::LessEq;
    Rational rhs;
  };

  std::vector<Variable> vars;
  std::vector<Row> rows;
  bool maximize = false;

  int add_variable(std::string name, std::optional<Rational> lower, std::optional<Rational> upper,
                   Rational cost = Rational(0));
  int add_row(std::string name, std::vector<std::pair<int, Rational>> terms, Relation rel, Rational rhs);

  /// Throws std::invalid_argument on out-of-range indices or crossed bounds.
  void check() const;
  [[nodiscard]] Rational objective_at(const std::vector<Rational>& point) const;
  /// Exact check of every bound and row.
  [[nodiscard]] bool satisfied_by(const std::vector<Rational>& point) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
  /// Row multipliers (sign convention: objective sense as given).
  std::vector<Rational> duals;
  /// True when the optimality or infeasibility proof was re-derived from the
  /// original data and checked exactly.
  bool certified = false;
  long pivots = 0;
};

/// Bounded-variable simplex over exact rationals. The tableau is kept between
/// calls so that a sequence of bound changes can be re-optimised from the
/// previous basis with the dual simplex.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp);

  void set_bounds(int var, const std::optional<Rational>& lower, const std::optional<Rational>& upper);
  LpOutcome solve();

  [[nodiscard]] long total_pivots() const { return total_pivots_; }
  void set_verify(bool on) { verify_ = on; }

 private:
  enum class At : unsigned char { Lower, Upper, Zero };

  struct Bound {
    bool has_lo = false;
    bool has_up = false;
    Rational lo;
    Rational up;
  };

  Rational& t(int r, int c) { return tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_) + static_cast<std::size_t>(c)]; }
  const Rational& t(int r, int c) const { return tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_) + static_cast<std::size_t>(c)]; }

  void place_nonbasic(int c);
  void recompute_basics();
  void step(int c, const Rational& theta);
  void pivot(int r, int c);
  bool dual_feasible() const;
  bool can_increase(int c) const;
  bool can_decrease(int c) const;

  LpStatus run_dual(LpOutcome& out);
  LpStatus run_primal(LpOutcome& out);
  void finish(LpOutcome& out, LpStatus status);
  bool certify_optimal(const LpOutcome& out) const;
  bool certify_identity(const std::vector<Rational>& g) const;

  const LinearProgram* lp_;
  int ns_;
  int m_;
  std::vector<Rational> cost_;  // minimisation form, length ns_
  std::vector<Bound> bound_;    // length ns_ + m_
  std::vector<Rational> tab_;   // m_ x ns_
  std::vector<Rational> d_;     // reduced costs per nonbasic column
  std::vector<Rational> val_;   // value of every variable
  std::vector<int> basic_;      // row -> variable
  std::vector<int> nonbasic_;   // column -> variable
  std::vector<int> where_;      // variable -> row (>= 0) or -(column + 1)
  std::vector<At> at_;          // per variable, meaningful when nonbasic
  std::vector<Rational> farkas_;
  long total_pivots_ = 0;
  bool verify_ = true;
};

LpOutcome solve_lp(const LinearProgram& lp);

}  // namespace leadcon
