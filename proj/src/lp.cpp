#include "leadcon/lp.hpp"

#include <stdexcept>

namespace leadcon {

namespace {

constexpr int kDegenerateStreak = 50;

}  // namespace

int LinearProgram::add_variable(std::string name, std::optional<Rational> lower, std::optional<Rational> upper,
                                Rational cost) {
  vars.push_back(Variable{std::move(name), std::move(lower), std::move(upper), std::move(cost)});
  return static_cast<int>(vars.size()) - 1;
}

int LinearProgram::add_row(std::string name, std::vector<std::pair<int, Rational>> terms, Relation rel, Rational rhs) {
  rows.push_back(Row{std::move(name), std::move(terms), rel, std::move(rhs)});
  return static_cast<int>(rows.size()) - 1;
}

void LinearProgram::check() const {
  const int n = static_cast<int>(vars.size());
  for (const auto& v : vars) {
    if (v.lower && v.upper && *v.upper < *v.lower) throw std::invalid_argument("variable '" + v.name + "' has crossed bounds");
  }
  for (const auto& row : rows) {
    for (const auto& [j, a] : row.terms) {
      if (j < 0 || j >= n) throw std::invalid_argument("row '" + row.name + "' references an unknown variable");
    }
  }
}

Rational LinearProgram::objective_at(const std::vector<Rational>& point) const {
  Rational v;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (!vars[j].cost.is_zero() && !point[j].is_zero()) v += vars[j].cost * point[j];
  }
  return v;
}

bool LinearProgram::satisfied_by(const std::vector<Rational>& point) const {
  if (point.size() != vars.size()) return false;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].lower && point[j] < *vars[j].lower) return false;
    if (vars[j].upper && point[j] > *vars[j].upper) return false;
  }
  for (const auto& row : rows) {
    Rational s;
    for (const auto& [j, a] : row.terms) {
      if (!point[static_cast<std::size_t>(j)].is_zero()) s += a * point[static_cast<std::size_t>(j)];
    }
    if (row.rel == Relation::LessEq && s > row.rhs) return false;
    if (row.rel == Relation::GreaterEq && s < row.rhs) return false;
    if (row.rel == Relation::Equal && s != row.rhs) return false;
  }
  return true;
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

Simplex::Simplex(const LinearProgram& lp) : lp_(&lp) {
  lp.check();
  ns_ = static_cast<int>(lp.vars.size());
  m_ = static_cast<int>(lp.rows.size());
  const int total = ns_ + m_;
  cost_.resize(static_cast<std::size_t>(ns_));
  bound_.resize(static_cast<std::size_t>(total));
  for (int j = 0; j < ns_; ++j) {
    const auto& v = lp.vars[static_cast<std::size_t>(j)];
    cost_[static_cast<std::size_t>(j)] = lp.maximize ? -v.cost : v.cost;
    Bound& b = bound_[static_cast<std::size_t>(j)];
    if (v.lower) {
      b.has_lo = true;
      b.lo = *v.lower;
    }
    if (v.upper) {
      b.has_up = true;
      b.up = *v.upper;
    }
  }
  tab_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(ns_), Rational(0));
  for (int k = 0; k < m_; ++k) {
    const auto& row = lp.rows[static_cast<std::size_t>(k)];
    Bound& b = bound_[static_cast<std::size_t>(ns_ + k)];
    if (row.rel != Relation::GreaterEq) {
      b.has_up = true;
      b.up = row.rhs;
    }
    if (row.rel != Relation::LessEq) {
      b.has_lo = true;
      b.lo = row.rhs;
    }
    for (const auto& [j, a] : row.terms) t(k, j) += a;
  }
  d_ = cost_;
  val_.assign(static_cast<std::size_t>(total), Rational(0));
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
  recompute_basics();
}

void Simplex::place_nonbasic(int c) {
  const int v = nonbasic_[static_cast<std::size_t>(c)];
  const Bound& b = bound_[static_cast<std::size_t>(v)];
  const int s = d_[static_cast<std::size_t>(c)].sign();
  At where;
  if (s > 0 && b.has_lo) {
    where = At::Lower;
  } else if (s < 0 && b.has_up) {
    where = At::Upper;
  } else if (b.has_lo) {
    where = At::Lower;
  } else if (b.has_up) {
    where = At::Upper;
  } else {
    where = At::Zero;
  }
  at_[static_cast<std::size_t>(v)] = where;
  val_[static_cast<std::size_t>(v)] = where == At::Lower ? b.lo : (where == At::Upper ? b.up : Rational(0));
}

void Simplex::recompute_basics() {
  for (int r = 0; r < m_; ++r) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = Rational(0);
  for (int c = 0; c < ns_; ++c) {
    const Rational& x = val_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)])];
    if (x.is_zero()) continue;
    for (int r = 0; r < m_; ++r) {
      const Rational& a = t(r, c);
      if (!a.is_zero()) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] += a * x;
    }
  }
}

void Simplex::set_bounds(int var, const std::optional<Rational>& lower, const std::optional<Rational>& upper) {
  Bound& b = bound_[static_cast<std::size_t>(var)];
  b.has_lo = lower.has_value();
  b.lo = lower ? *lower : Rational(0);
  b.has_up = upper.has_value();
  b.up = upper ? *upper : Rational(0);
  const int w = where_[static_cast<std::size_t>(var)];
  if (w >= 0) return;
  const int c = -w - 1;
  const Rational old = val_[static_cast<std::size_t>(var)];
  place_nonbasic(c);
  const Rational delta = val_[static_cast<std::size_t>(var)] - old;
  if (delta.is_zero()) return;
  for (int r = 0; r < m_; ++r) {
    const Rational& a = t(r, c);
    if (!a.is_zero()) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])].add_mul(a, delta);
  }
}

void Simplex::step(int c, const Rational& theta) {
  if (theta.is_zero()) return;
  val_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)])] += theta;
  for (int r = 0; r < m_; ++r) {
    const Rational& a = t(r, c);
    if (!a.is_zero()) val_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])].add_mul(a, theta);
  }
}

void Simplex::pivot(int r, int c) {
  const Rational inv = Rational(1) / t(r, c);
  std::vector<int> nz;
  for (int k = 0; k < ns_; ++k) {
    if (k == c) continue;
    Rational& a = t(r, k);
    if (a.is_zero()) continue;
    a *= inv;
    a = -a;
    nz.push_back(k);
  }
  t(r, c) = inv;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    if (t(i, c).is_zero()) continue;
    const Rational f = t(i, c);
    for (int k : nz) t(i, k).add_mul(f, t(r, k));
    t(i, c) = f * inv;
  }
  if (!d_[static_cast<std::size_t>(c)].is_zero()) {
    const Rational f = d_[static_cast<std::size_t>(c)];
    for (int k : nz) d_[static_cast<std::size_t>(k)].add_mul(f, t(r, k));
    d_[static_cast<std::size_t>(c)] = f * inv;
  }
  const int leaving = basic_[static_cast<std::size_t>(r)];
  const int entering = nonbasic_[static_cast<std::size_t>(c)];
  basic_[static_cast<std::size_t>(r)] = entering;
  nonbasic_[static_cast<std::size_t>(c)] = leaving;
  where_[static_cast<std::size_t>(entering)] = r;
  where_[static_cast<std::size_t>(leaving)] = -(c + 1);
  ++total_pivots_;
}

bool Simplex::can_increase(int c) const {
  const int v = nonbasic_[static_cast<std::size_t>(c)];
  const Bound& b = bound_[static_cast<std::size_t>(v)];
  if (b.has_lo && b.has_up && b.lo == b.up) return false;
  return at_[static_cast<std::size_t>(v)] != At::Upper;
}

bool Simplex::can_decrease(int c) const {
  const int v = nonbasic_[static_cast<std::size_t>(c)];
  const Bound& b = bound_[static_cast<std::size_t>(v)];
  if (b.has_lo && b.has_up && b.lo == b.up) return false;
  return at_[static_cast<std::size_t>(v)] != At::Lower;
}

bool Simplex::dual_feasible() const {
  for (int c = 0; c < ns_; ++c) {
    const int s = d_[static_cast<std::size_t>(c)].sign();
    if (s > 0 && can_decrease(c)) return false;
    if (s < 0 && can_increase(c)) return false;
  }
  return true;
}

LpStatus Simplex::run_dual(LpOutcome& out) {
  int degenerate = 0;
  bool bland = false;
  for (;;) {
    int row = -1;
    bool below = false;
    Rational worst;
    for (int r = 0; r < m_; ++r) {
      const int v = basic_[static_cast<std::size_t>(r)];
      const Rational& x = val_[static_cast<std::size_t>(v)];
      const Bound& b = bound_[static_cast<std::size_t>(v)];
      Rational viol;
      bool lo_side;
      if (b.has_lo && x < b.lo) {
        viol = b.lo - x;
        lo_side = true;
      } else if (b.has_up && x > b.up) {
        viol = x - b.up;
        lo_side = false;
      } else {
        continue;
      }
      const bool better = row < 0 ||
                          (bland ? v < basic_[static_cast<std::size_t>(row)]
                                 : (viol > worst || (viol == worst && v < basic_[static_cast<std::size_t>(row)])));
      if (better) {
        row = r;
        below = lo_side;
        worst = std::move(viol);
      }
    }
    if (row < 0) return LpStatus::Optimal;

    int col = -1;
    Rational best_ratio;
    Rational best_mag;
    for (int c = 0; c < ns_; ++c) {
      const Rational& a = t(row, c);
      if (a.is_zero()) continue;
      const bool increase = below ? a.sign() > 0 : a.sign() < 0;
      if (increase ? !can_increase(c) : !can_decrease(c)) continue;
      const Rational mag = abs(a);
      const Rational ratio = abs(d_[static_cast<std::size_t>(c)]) / mag;
      bool better = col < 0 || ratio < best_ratio;
      if (!better && ratio == best_ratio) {
        const int v = nonbasic_[static_cast<std::size_t>(c)];
        const int w = nonbasic_[static_cast<std::size_t>(col)];
        better = bland ? v < w : (mag > best_mag || (mag == best_mag && v < w));
      }
      if (better) {
        col = c;
        best_ratio = ratio;
        best_mag = mag;
      }
    }
    if (col < 0) {
      farkas_.assign(static_cast<std::size_t>(ns_ + m_), Rational(0));
      farkas_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(row)])] = Rational(1);
      for (int c = 0; c < ns_; ++c) {
        if (!t(row, c).is_zero()) farkas_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)])] = -t(row, c);
      }
      return LpStatus::Infeasible;
    }
    const int leaving = basic_[static_cast<std::size_t>(row)];
    const Bound& lb = bound_[static_cast<std::size_t>(leaving)];
    const Rational target = below ? lb.lo : lb.up;
    const Rational theta = (target - val_[static_cast<std::size_t>(leaving)]) / t(row, col);
    step(col, theta);
    pivot(row, col);
    at_[static_cast<std::size_t>(leaving)] = below ? At::Lower : At::Upper;
    val_[static_cast<std::size_t>(leaving)] = target;
    ++out.pivots;
    if (best_ratio.is_zero()) {
      if (++degenerate > kDegenerateStreak) bland = true;
    } else {
      degenerate = 0;
      bland = false;
    }
  }
}

LpStatus Simplex::run_primal(LpOutcome& out) {
  int degenerate = 0;
  bool bland = false;
  std::vector<int> w(static_cast<std::size_t>(m_));
  std::vector<Rational> e(static_cast<std::size_t>(ns_));
  for (;;) {
    bool phase1 = false;
    for (int r = 0; r < m_; ++r) {
      const int v = basic_[static_cast<std::size_t>(r)];
      const Rational& x = val_[static_cast<std::size_t>(v)];
      const Bound& b = bound_[static_cast<std::size_t>(v)];
      int s = 0;
      if (b.has_lo && x < b.lo) s = -1;
      if (b.has_up && x > b.up) s = 1;
      w[static_cast<std::size_t>(r)] = s;
      phase1 = phase1 || s != 0;
    }
    if (phase1) {
      for (int c = 0; c < ns_; ++c) {
        Rational acc;
        for (int r = 0; r < m_; ++r) {
          const int s = w[static_cast<std::size_t>(r)];
          if (s == 0 || t(r, c).is_zero()) continue;
          if (s > 0) {
            acc += t(r, c);
          } else {
            acc -= t(r, c);
          }
        }
        e[static_cast<std::size_t>(c)] = std::move(acc);
      }
    }
    const std::vector<Rational>& price = phase1 ? e : d_;

    int col = -1;
    for (int c = 0; c < ns_; ++c) {
      const int s = price[static_cast<std::size_t>(c)].sign();
      if (!((s < 0 && can_increase(c)) || (s > 0 && can_decrease(c)))) continue;
      if (col < 0) {
        col = c;
        continue;
      }
      const int v = nonbasic_[static_cast<std::size_t>(c)];
      const int u = nonbasic_[static_cast<std::size_t>(col)];
      if (bland) {
        if (v < u) col = c;
      } else {
        const Rational mc = abs(price[static_cast<std::size_t>(c)]);
        const Rational mb = abs(price[static_cast<std::size_t>(col)]);
        if (mc > mb || (mc == mb && v < u)) col = c;
      }
    }
    if (col < 0) {
      if (!phase1) return LpStatus::Optimal;
      farkas_.assign(static_cast<std::size_t>(ns_ + m_), Rational(0));
      for (int r = 0; r < m_; ++r) {
        farkas_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = Rational(w[static_cast<std::size_t>(r)]);
      }
      for (int c = 0; c < ns_; ++c) farkas_[static_cast<std::size_t>(nonbasic_[static_cast<std::size_t>(c)])] = -e[static_cast<std::size_t>(c)];
      return LpStatus::Infeasible;
    }
    const int dir = price[static_cast<std::size_t>(col)].sign() < 0 ? 1 : -1;
    const int entering = nonbasic_[static_cast<std::size_t>(col)];
    const Bound& eb = bound_[static_cast<std::size_t>(entering)];

    bool have_limit = false;
    Rational limit;
    if (dir > 0 && eb.has_up) {
      have_limit = true;
      limit = eb.up - val_[static_cast<std::size_t>(entering)];
    } else if (dir < 0 && eb.has_lo) {
      have_limit = true;
      limit = val_[static_cast<std::size_t>(entering)] - eb.lo;
    }
    int row = -1;
    bool to_lower = false;
    Rational row_limit;
    Rational row_mag;
    for (int r = 0; r < m_; ++r) {
      const Rational& a = t(r, col);
      if (a.is_zero()) continue;
      const int v = basic_[static_cast<std::size_t>(r)];
      const Rational& x = val_[static_cast<std::size_t>(v)];
      const Bound& b = bound_[static_cast<std::size_t>(v)];
      const bool rising = (a.sign() > 0) == (dir > 0);
      const Rational mag = abs(a);
      Rational lim;
      bool lower_hit;
      if (rising) {
        if (b.has_lo && x < b.lo) {
          lim = (b.lo - x) / mag;
          lower_hit = true;
        } else if (b.has_up && !(x > b.up)) {
          lim = (b.up - x) / mag;
          lower_hit = false;
        } else {
          continue;
        }
      } else {
        if (b.has_up && x > b.up) {
          lim = (x - b.up) / mag;
          lower_hit = false;
        } else if (b.has_lo && !(x < b.lo)) {
          lim = (x - b.lo) / mag;
          lower_hit = true;
        } else {
          continue;
        }
      }
      bool better = row < 0 || lim < row_limit;
      if (!better && lim == row_limit) {
        const int u = basic_[static_cast<std::size_t>(row)];
        better = bland ? v < u : (mag > row_mag || (mag == row_mag && v < u));
      }
      if (better) {
        row = r;
        row_limit = std::move(lim);
        row_mag = mag;
        to_lower = lower_hit;
      }
    }
    if (row < 0 && !have_limit) {
      if (phase1) throw std::logic_error("phase one ray without progress");
      farkas_.assign(static_cast<std::size_t>(ns_ + m_), Rational(0));
      farkas_[static_cast<std::size_t>(entering)] = Rational(dir);
      for (int r = 0; r < m_; ++r) {
        if (!t(r, col).is_zero()) farkas_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = t(r, col) * Rational(dir);
      }
      return LpStatus::Unbounded;
    }
    Rational theta;
    if (have_limit && (row < 0 || !(row_limit < limit))) {
      theta = limit;
      step(col, dir > 0 ? theta : -theta);
      at_[static_cast<std::size_t>(entering)] = dir > 0 ? At::Upper : At::Lower;
    } else {
      theta = row_limit;
      step(col, dir > 0 ? theta : -theta);
      const int leaving = basic_[static_cast<std::size_t>(row)];
      pivot(row, col);
      at_[static_cast<std::size_t>(leaving)] = to_lower ? At::Lower : At::Upper;
      const Bound& lb = bound_[static_cast<std::size_t>(leaving)];
      val_[static_cast<std::size_t>(leaving)] = to_lower ? lb.lo : lb.up;
      ++out.pivots;
    }
    if (theta.is_zero()) {
      if (++degenerate > kDegenerateStreak) bland = true;
    } else {
      degenerate = 0;
      bland = false;
    }
  }
}

bool Simplex::certify_optimal(const LpOutcome& out) const {
  if (!lp_->satisfied_by(out.point)) return false;
  std::vector<Rational> y(static_cast<std::size_t>(m_));
  for (int k = 0; k < m_; ++k) {
    const int w = where_[static_cast<std::size_t>(ns_ + k)];
    if (w < 0) y[static_cast<std::size_t>(k)] = d_[static_cast<std::size_t>(-w - 1)];
  }
  std::vector<Rational> red = cost_;
  for (int k = 0; k < m_; ++k) {
    if (y[static_cast<std::size_t>(k)].is_zero()) continue;
    for (const auto& [j, a] : lp_->rows[static_cast<std::size_t>(k)].terms) red[static_cast<std::size_t>(j)] -= y[static_cast<std::size_t>(k)] * a;
  }
  Rational bound;
  auto add_min = [&](const Rational& coef, const Bound& b) {
    const int s = coef.sign();
    if (s == 0) return true;
    if (s > 0) {
      if (!b.has_lo) return false;
      bound += coef * b.lo;
    } else {
      if (!b.has_up) return false;
      bound += coef * b.up;
    }
    return true;
  };
  for (int j = 0; j < ns_; ++j) {
    if (!add_min(red[static_cast<std::size_t>(j)], bound_[static_cast<std::size_t>(j)])) return false;
  }
  for (int k = 0; k < m_; ++k) {
    if (!add_min(y[static_cast<std::size_t>(k)], bound_[static_cast<std::size_t>(ns_ + k)])) return false;
  }
  Rational value;
  for (int j = 0; j < ns_; ++j) {
    if (!cost_[static_cast<std::size_t>(j)].is_zero()) value += cost_[static_cast<std::size_t>(j)] * out.point[static_cast<std::size_t>(j)];
  }
  return bound == value;
}

bool Simplex::certify_identity(const std::vector<Rational>& g) const {
  std::vector<Rational> h(g.begin(), g.begin() + ns_);
  for (int k = 0; k < m_; ++k) {
    const Rational& y = g[static_cast<std::size_t>(ns_ + k)];
    if (y.is_zero()) continue;
    for (const auto& [j, a] : lp_->rows[static_cast<std::size_t>(k)].terms) h[static_cast<std::size_t>(j)] += y * a;
  }
  for (const auto& v : h) {
    if (!v.is_zero()) return false;
  }
  Rational lo;
  Rational hi;
  bool lo_inf = false;
  bool hi_inf = false;
  for (int v = 0; v < ns_ + m_; ++v) {
    const Rational& coef = g[static_cast<std::size_t>(v)];
    const int s = coef.sign();
    if (s == 0) continue;
    const Bound& b = bound_[static_cast<std::size_t>(v)];
    const bool min_lo = s > 0;
    if (min_lo ? b.has_lo : b.has_up) {
      lo += coef * (min_lo ? b.lo : b.up);
    } else {
      lo_inf = true;
    }
    if (min_lo ? b.has_up : b.has_lo) {
      hi += coef * (min_lo ? b.up : b.lo);
    } else {
      hi_inf = true;
    }
  }
  return (!lo_inf && lo.sign() > 0) || (!hi_inf && hi.sign() < 0);
}

void Simplex::finish(LpOutcome& out, LpStatus status) {
  out.status = status;
  out.point.assign(val_.begin(), val_.begin() + ns_);
  if (status == LpStatus::Optimal) {
    out.value = lp_->objective_at(out.point);
    out.duals.assign(static_cast<std::size_t>(m_), Rational(0));
    for (int k = 0; k < m_; ++k) {
      const int w = where_[static_cast<std::size_t>(ns_ + k)];
      if (w < 0) {
        const Rational& y = d_[static_cast<std::size_t>(-w - 1)];
        out.duals[static_cast<std::size_t>(k)] = lp_->maximize ? -y : y;
      }
    }
    out.certified = !verify_ || certify_optimal(out);
  } else if (status == LpStatus::Infeasible) {
    out.point.clear();
    out.certified = !verify_ || certify_identity(farkas_);
  } else {
    // The ray must be admissible for every variable it moves and must improve the objective.
    bool ok = lp_->satisfied_by(out.point);
    Rational slope;
    std::vector<Rational> act(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k) {
      for (const auto& [j, a] : lp_->rows[static_cast<std::size_t>(k)].terms) act[static_cast<std::size_t>(k)] += a * farkas_[static_cast<std::size_t>(j)];
    }
    for (int v = 0; v < ns_ + m_ && ok; ++v) {
      const Rational& dv = v < ns_ ? farkas_[static_cast<std::size_t>(v)] : act[static_cast<std::size_t>(v - ns_)];
      const Bound& b = bound_[static_cast<std::size_t>(v)];
      if ((dv.sign() > 0 && b.has_up) || (dv.sign() < 0 && b.has_lo)) ok = false;
      if (v < ns_) slope += cost_[static_cast<std::size_t>(v)] * dv;
    }
    out.certified = ok && slope.sign() < 0;
  }
}

LpOutcome Simplex::solve() {
  LpOutcome out;
  const LpStatus st = dual_feasible() ? run_dual(out) : run_primal(out);
  finish(out, st);
  return out;
}

LpOutcome solve_lp(const LinearProgram& lp) {
  Simplex s(lp);
  return s.solve();
}

}  // namespace leadcon
