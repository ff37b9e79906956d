#include "float_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace leadcon::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr long kRefactorEvery = 2000;
// Suspicious results trigger a refactor only after this many updates.
constexpr long kRecheckAfter = 300;

}  // namespace

FloatSimplex::FloatSimplex(const LinearProgram& lp) {
  ns_ = static_cast<int>(lp.vars.size());
  m_ = static_cast<int>(lp.rows.size());
  const int total = ns_ + m_;
  cost_.resize(static_cast<std::size_t>(ns_));
  lo_.assign(static_cast<std::size_t>(total), -kInf);
  up_.assign(static_cast<std::size_t>(total), kInf);
  for (int j = 0; j < ns_; ++j) {
    const auto& v = lp.vars[static_cast<std::size_t>(j)];
    cost_[static_cast<std::size_t>(j)] = lp.maximize ? -v.cost.to_double() : v.cost.to_double();
    if (v.lower) lo_[static_cast<std::size_t>(j)] = v.lower->to_double();
    if (v.upper) up_[static_cast<std::size_t>(j)] = v.upper->to_double();
  }
  rows_.resize(static_cast<std::size_t>(m_));
  tab_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(ns_), 0.0);
  for (int k = 0; k < m_; ++k) {
    const auto& row = lp.rows[static_cast<std::size_t>(k)];
    const double rhs = row.rhs.to_double();
    if (row.rel != Relation::GreaterEq) up_[static_cast<std::size_t>(ns_ + k)] = rhs;
    if (row.rel != Relation::LessEq) lo_[static_cast<std::size_t>(ns_ + k)] = rhs;
    for (const auto& [j, a] : row.terms) {
      rows_[static_cast<std::size_t>(k)].emplace_back(j, a.to_double());
      t(k, j) += a.to_double();
    }
  }
  d_ = cost_;
  work_ = cost_;
  val_.assign(static_cast<std::size_t>(total), 0.0);
  at_.assign(static_cast<std::size_t>(total), At::Zero);
  where_.resize(static_cast<std::size_t>(total));
  basic_.resize(static_cast<std::size_t>(m_));
  nonbasic_.resize(static_cast<std::size_t>(ns_));
  for (int k = 0; k < m_; ++k) {
    basic_[static_cast<std::size_t>(k)] = ns_ + k;
    where_[static_cast<std::size_t>(ns_ + k)] = k;
  }
  for (int j = 0; j < ns_; ++j) {
    nonbasic_[static_cast<std::size_t>(j)] = j;
    where_[static_cast<std::size_t>(j)] = -(j + 1);
    place_nonbasic(j);
  }
  recompute_values();
}

void FloatSimplex::place_nonbasic(int c) {
  const auto v = static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)]);
  const double dc = d_[static_cast<std::size_t>(c)];
  const bool has_lo = std::isfinite(lo_[v]);
  const bool has_up = std::isfinite(up_[v]);
  At w;
  if (dc > 0 && has_lo) {
    w = At::Lower;
  } else if (dc < 0 && has_up) {
    w = At::Upper;
  } else if (has_lo) {
    w = At::Lower;
  } else if (has_up) {
    w = At::Upper;
  } else {
    w = At::Zero;
  }
  at_[v] = w;
  val_[v] = w == At::Lower ? lo_[v] : (w == At::Upper ? up_[v] : 0.0);
}

void FloatSimplex::recompute_values() {
  for (int r = 0; r < m_; ++r) {
    double s = 0.0;
    const double* row = &tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_)];
    for (int c = 0; c < ns_; ++c) {
      if (row[c] != 0.0) s += row[c] * val_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)])];
    }
    val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = s;
  }
}

void FloatSimplex::refactor() {
  // Basic and nonbasic columns of [A | -I]; the tableau is -B^{-1} N.
  std::vector<std::vector<std::pair<int, double>>> cols(static_cast<std::size_t>(ns_));
  for (int k = 0; k < m_; ++k) {
    for (const auto& [j, a] : rows_[static_cast<std::size_t>(k)]) cols[static_cast<std::size_t>(j)].emplace_back(k, a);
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
  Eigen::MatrixXd rest = Eigen::MatrixXd::Zero(m_, ns_);
  auto column = [&](Eigen::MatrixXd& out, int col, int var) {
    if (var < ns_) {
      for (const auto& [k, a] : cols[static_cast<std::size_t>(var)]) out(k, col) = a;
    } else {
      out(var - ns_, col) = -1.0;
    }
  };
  for (int r = 0; r < m_; ++r) column(basis, r, basic_[static_cast<std::size_t>(r)]);
  for (int c = 0; c < ns_; ++c) column(rest, c, nonbasic_[static_cast<std::size_t>(c)]);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  if (!(lu.rcond() > 1e-13)) {
    reset();
    return;
  }
  const Eigen::MatrixXd sol = -lu.solve(rest);
  for (int r = 0; r < m_; ++r) {
    for (int c = 0; c < ns_; ++c) {
      const double v = sol(r, c);
      t(r, c) = std::abs(v) < kDropTol ? 0.0 : v;
    }
  }
  recompute_reduced_costs();
  recompute_values();
  since_refactor_ = 0;
}

void FloatSimplex::recompute_reduced_costs() {
  for (int c = 0; c < ns_; ++c) {
    const int v = nonbasic_[static_cast<std::size_t>(c)];
    d_[static_cast<std::size_t>(c)] = v < ns_ ? work_[static_cast<std::size_t>(v)] : 0.0;
  }
  for (int r = 0; r < m_; ++r) {
    const int b = basic_[static_cast<std::size_t>(r)];
    if (b >= ns_) continue;
    const double cb = work_[static_cast<std::size_t>(b)];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_)];
    for (int c = 0; c < ns_; ++c) {
      if (row[c] != 0.0) d_[static_cast<std::size_t>(c)] += cb * row[c];
    }
  }
}

void FloatSimplex::perturb() {
  work_ = cost_;
  for (int j = 0; j < ns_; ++j) {
    rng_ = rng_ * 1664525u + 1013904223u;
    const double u = 0.5 + 0.5 * static_cast<double>(rng_ >> 8) / 16777216.0;
    const double xi = (1e-6 + 1e-7 * std::abs(cost_[static_cast<std::size_t>(j)])) * u;
    if (where_[static_cast<std::size_t>(j)] >= 0) continue;
    work_[static_cast<std::size_t>(j)] += at_[static_cast<std::size_t>(j)] == At::Upper ? -xi : xi;
  }
  recompute_reduced_costs();
}

double FloatSimplex::residual() const {
  double worst = 0.0;
  for (int k = 0; k < m_; ++k) {
    double s = 0.0;
    for (const auto& [j, a] : rows_[static_cast<std::size_t>(k)]) s += a * val_[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(s - val_[static_cast<std::size_t>(ns_ + k)]));
  }
  return worst;
}

void FloatSimplex::set_bounds(int var, double lo, double up) {
  const auto v = static_cast<std::size_t>(var);
  lo_[v] = lo;
  up_[v] = up;
  const int w = where_[v];
  if (w >= 0) return;
  const int c = -w - 1;
  const double old = val_[v];
  place_nonbasic(c);
  const double delta = val_[v] - old;
  if (delta == 0.0) return;
  for (int r = 0; r < m_; ++r) {
    const double a = t(r, c);
    if (a != 0.0) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] += a * delta;
  }
}

bool FloatSimplex::dual_feasible(bool lenient) {
  for (int c = 0; c < ns_; ++c) {
    const auto v = static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)]);
    const double dc = d_[static_cast<std::size_t>(c)];
    const bool fixed = lo_[v] == up_[v];
    if (fixed) continue;
    const bool wrong = (dc > kDualTol && at_[v] != At::Lower) || (dc < -kDualTol && at_[v] != At::Upper);
    if (!wrong) continue;
    if ((dc > 0 && !std::isfinite(lo_[v])) || (dc < 0 && !std::isfinite(up_[v]))) {
      if (lenient && std::abs(dc) < 1e-5) continue;
      return false;
    }
    const double old = val_[v];
    place_nonbasic(c);
    const double delta = val_[v] - old;
    for (int r = 0; r < m_; ++r) {
      const double a = t(r, c);
      if (a != 0.0) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] += a * delta;
    }
  }
  return true;
}

void FloatSimplex::pivot(int r, int c) {
  const double inv = 1.0 / t(r, c);
  double* prow = &tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ns_)];
  std::vector<int> nz;
  nz.reserve(static_cast<std::size_t>(ns_));
  for (int k = 0; k < ns_; ++k) {
    if (k == c || prow[k] == 0.0) continue;
    prow[k] *= -inv;
    nz.push_back(k);
  }
  prow[c] = inv;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * static_cast<std::size_t>(ns_)];
    const double f = row[c];
    if (f == 0.0) continue;
    for (int k : nz) {
      double v = row[k] + f * prow[k];
      row[k] = std::abs(v) < kDropTol ? 0.0 : v;
    }
    row[c] = f * inv;
  }
  const double f = d_[static_cast<std::size_t>(c)];
  if (f != 0.0) {
    for (int k : nz) d_[static_cast<std::size_t>(k)] += f * prow[k];
    d_[static_cast<std::size_t>(c)] = f * inv;
  }
  const int leaving = basic_[static_cast<std::size_t>(r)];
  const int entering = nonbasic_[static_cast<std::size_t>(c)];
  basic_[static_cast<std::size_t>(r)] = entering;
  nonbasic_[static_cast<std::size_t>(c)] = leaving;
  where_[static_cast<std::size_t>(entering)] = r;
  where_[static_cast<std::size_t>(leaving)] = -(c + 1);
  ++since_refactor_;
  ++total_pivots_;
}

void FloatSimplex::reset() {
  std::fill(tab_.begin(), tab_.end(), 0.0);
  for (int k = 0; k < m_; ++k) {
    for (const auto& [j, a] : rows_[static_cast<std::size_t>(k)]) t(k, j) += a;
    basic_[static_cast<std::size_t>(k)] = ns_ + k;
    where_[static_cast<std::size_t>(ns_ + k)] = k;
  }
  work_ = cost_;
  d_ = cost_;
  for (int j = 0; j < ns_; ++j) {
    nonbasic_[static_cast<std::size_t>(j)] = j;
    where_[static_cast<std::size_t>(j)] = -(j + 1);
    place_nonbasic(j);
  }
  recompute_values();
  since_refactor_ = 0;
}

FloatSimplex::Result FloatSimplex::solve(long max_pivots) {
  Result out = solve_once(max_pivots);
  if (out.status != Status::Failed) return out;
  // Numerical trouble: restart from the slack basis once.
  const long spent = out.pivots;
  reset();
  out = solve_once(max_pivots);
  out.pivots += spent;
  return out;
}

FloatSimplex::Result FloatSimplex::solve_once(long max_pivots) {
  Result out;
  if (since_refactor_ >= kRefactorEvery) refactor();
  bool fresh = since_refactor_ < kRecheckAfter;
  perturb();
  bool perturbed = true;
  if (!dual_feasible(true)) return out;
  for (;;) {
    int row = -1;
    bool below = false;
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
      const auto v = static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)]);
      const double x = val_[v];
      double viol = 0.0;
      bool lo_side = false;
      if (x < lo_[v] - kPrimalTol * (1.0 + std::abs(lo_[v]))) {
        viol = lo_[v] - x;
        lo_side = true;
      } else if (x > up_[v] + kPrimalTol * (1.0 + std::abs(up_[v]))) {
        viol = x - up_[v];
      } else {
        continue;
      }
      if (viol > worst) {
        worst = viol;
        row = r;
        below = lo_side;
      }
    }
    if (row < 0) {
      if (residual() > 1e-7 && !fresh) {
        refactor();
        fresh = true;
        if (!dual_feasible(true)) return out;
        continue;
      }
      if (perturbed) {
        perturbed = false;
        work_ = cost_;
        recompute_reduced_costs();
        if (!dual_feasible(true)) return out;
        continue;
      }
      out.status = Status::Optimal;
      break;
    }

    // Harris two-pass ratio test.
    const double* prow = &tab_[static_cast<std::size_t>(row) * static_cast<std::size_t>(ns_)];
    double row_max = 0.0;
    for (int c = 0; c < ns_; ++c) row_max = std::max(row_max, std::abs(prow[c]));
    const double piv_tol = std::max(kPivotTol, 1e-7 * row_max);
    auto eligible = [&](int c) {
      const double a = prow[c];
      if (std::abs(a) < piv_tol) return false;
      const auto v = static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)]);
      if (lo_[v] == up_[v]) return false;
      const bool increase = below ? a > 0 : a < 0;
      return increase ? at_[v] != At::Upper : at_[v] != At::Lower;
    };
    double bound = kInf;
    for (int c = 0; c < ns_; ++c) {
      if (!eligible(c)) continue;
      bound = std::min(bound, (std::abs(d_[static_cast<std::size_t>(c)]) + kDualTol) / std::abs(prow[c]));
    }
    if (bound == kInf) {
      if (!fresh) {
        refactor();
        fresh = true;
        if (!dual_feasible(true)) return out;
        continue;
      }
      out.status = Status::Infeasible;
      out.y.assign(static_cast<std::size_t>(m_), 0.0);
      const int bv = basic_[static_cast<std::size_t>(row)];
      if (bv >= ns_) out.y[static_cast<std::size_t>(bv - ns_)] = 1.0;
      for (int c = 0; c < ns_; ++c) {
        const int v = nonbasic_[static_cast<std::size_t>(c)];
        if (v >= ns_) out.y[static_cast<std::size_t>(v - ns_)] = -prow[c];
      }
      return out;
    }
    int col = -1;
    double best = 0.0;
    for (int c = 0; c < ns_; ++c) {
      if (!eligible(c)) continue;
      if (std::abs(d_[static_cast<std::size_t>(c)]) / std::abs(prow[c]) > bound) continue;
      double mag = std::abs(prow[c]);
      rng_ = rng_ * 1664525u + 1013904223u;
      mag *= 1.0 + 1e-9 * static_cast<double>(rng_ >> 8) / 16777216.0;
      if (mag > best) {
        best = mag;
        col = c;
      }
    }
    const int leaving = basic_[static_cast<std::size_t>(row)];
    const double target = below ? lo_[static_cast<std::size_t>(leaving)] : up_[static_cast<std::size_t>(leaving)];
    const double theta = (target - val_[static_cast<std::size_t>(leaving)]) / prow[col];
    val_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(col)])] += theta;
    for (int r = 0; r < m_; ++r) {
      const double a = t(r, col);
      if (a != 0.0) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] += a * theta;
    }
    pivot(row, col);
    at_[static_cast<std::size_t>(leaving)] = below ? At::Lower : At::Upper;
    val_[static_cast<std::size_t>(leaving)] = target;
    fresh = since_refactor_ < kRecheckAfter;
    if (++out.pivots > max_pivots) return out;
    if (since_refactor_ >= kRefactorEvery) {
      refactor();
      fresh = true;
      if (!dual_feasible(true)) return out;
    }
  }
  out.x.assign(val_.begin(), val_.begin() + ns_);
  out.y.assign(static_cast<std::size_t>(m_), 0.0);
  for (int k = 0; k < m_; ++k) {
    const int w = where_[static_cast<std::size_t>(ns_ + k)];
    if (w < 0) out.y[static_cast<std::size_t>(k)] = d_[static_cast<std::size_t>(-w - 1)];
  }
  for (int j = 0; j < ns_; ++j) out.value += cost_[static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace leadcon::detail
