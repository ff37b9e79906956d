#include "leadcon/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "leadcon/dynamics.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/oracle.hpp"
#include "float_simplex.hpp"

namespace leadcon {

std::string to_string(MilpMode m) { return m == MilpMode::Corrected ? "corrected" : "paper_faithful"; }

MilpMode parse_milp_mode(const std::string& text) {
  if (text == "corrected") return MilpMode::Corrected;
  if (text == "paper_faithful" || text == "paper-faithful") return MilpMode::PaperFaithful;
  throw ValidationError("unknown MILP mode '" + text + "'");
}

namespace {

using Terms = std::vector<std::pair<int, Rational>>;

void add_term(Terms& t, int var, const Rational& coef) {
  if (!coef.is_zero()) t.emplace_back(var, coef);
}

std::string idx(std::initializer_list<int> parts) {
  std::string s;
  for (int p : parts) s += "_" + std::to_string(p);
  return s;
}

/// Follower's expected cost when staying on i (v >= 1 terms).
void stay_side(const GameInstance& inst, const MilpModel& m, int i, Terms& t, Rational sign) {
  const auto& ys = m.y[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const int v = m.v_lo + static_cast<int>(k);
    if (v == 0) continue;
    add_term(t, ys[k], sign * inst.cf(i, v));
    add_term(t, m.z[static_cast<std::size_t>(i)][k], sign * (inst.cf(i, v + 1) - inst.cf(i, v)));
  }
}

/// Expected cost of entering j, over load levels v <= v_cap.
void enter_side(const GameInstance& inst, const MilpModel& m, int j, int v_cap, Terms& t, Rational sign) {
  const auto& ys = m.y[static_cast<std::size_t>(j)];
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const int v = m.v_lo + static_cast<int>(k);
    if (v > v_cap) break;
    add_term(t, ys[k], sign * inst.cf(j, v + 1));
    add_term(t, m.z[static_cast<std::size_t>(j)][k], sign * (inst.cf(j, v + 2) - inst.cf(j, v + 1)));
  }
}

}  // namespace

MilpModel build_milp(const GameInstance& inst, MilpMode mode) {
  inst.validate();
  MilpModel m;
  m.mode = mode;
  m.symmetric = classify(inst).symmetric;
  const bool corrected = mode == MilpMode::Corrected;
  m.v_lo = corrected ? 0 : 1;
  const int r = inst.resource_count();
  const int F = inst.followers;
  auto& lp = m.lp;

  std::vector<int> vbar(static_cast<std::size_t>(r), 0);
  if (m.symmetric) {
    std::fill(vbar.begin(), vbar.end(), corrected ? F : inst.players());
  } else {
    for (const auto& a : inst.follower_actions) {
      for (int i : a) ++vbar[static_cast<std::size_t>(i)];
    }
  }

  for (int i = 0; i < r; ++i) {
    const Rational ub = inst.leader_can_use(i) ? Rational(1) : Rational(0);
    m.alpha.push_back(lp.add_variable("a" + idx({i}), Rational(0), ub));
  }
  m.y.resize(static_cast<std::size_t>(r));
  m.z.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    for (int v = m.v_lo; v <= vbar[static_cast<std::size_t>(i)]; ++v) {
      const int yv = lp.add_variable("y" + idx({i, v}), Rational(0), Rational(1));
      m.y[static_cast<std::size_t>(i)].push_back(yv);
      m.binaries.push_back(yv);
    }
    for (int v = m.v_lo; v <= vbar[static_cast<std::size_t>(i)]; ++v) {
      m.z[static_cast<std::size_t>(i)].push_back(lp.add_variable("z" + idx({i, v}), Rational(0), Rational(1), inst.cl(i, v + 1)));
    }
  }
  if (!m.symmetric) {
    m.x.resize(static_cast<std::size_t>(F));
    for (int p = 0; p < F; ++p) {
      for (int i : inst.follower_actions[static_cast<std::size_t>(p)]) {
        const int xv = lp.add_variable("x" + idx({p, i}), Rational(0), Rational(1));
        m.x[static_cast<std::size_t>(p)].emplace_back(i, xv);
        m.binaries.push_back(xv);
      }
    }
  }

  // Equilibrium rows: staying on i costs no more than entering j.
  if (m.symmetric) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        Terms t;
        stay_side(inst, m, i, t, Rational(1));
        enter_side(inst, m, j, vbar[static_cast<std::size_t>(j)], t, Rational(-1));
        lp.add_row("ne" + idx({i, j}), std::move(t), Relation::LessEq, Rational(0));
      }
    }
  } else {
    Rational big(0);
    for (const auto& tab : inst.follower_costs) {
      for (const auto& c : tab) big = max(big, c);
    }
    big += Rational(1);
    for (int p = 0; p < F; ++p) {
      for (const auto& [i, xv] : m.x[static_cast<std::size_t>(p)]) {
        for (const auto& [j, xj] : m.x[static_cast<std::size_t>(p)]) {
          (void)xj;
          if (i == j) continue;
          Terms t;
          stay_side(inst, m, i, t, Rational(1));
          const int cap = corrected ? vbar[static_cast<std::size_t>(j)]
                                    : std::min(vbar[static_cast<std::size_t>(i)], vbar[static_cast<std::size_t>(j)]);
          enter_side(inst, m, j, cap, t, Rational(-1));
          Rational rhs(0);
          if (corrected) {
            add_term(t, xv, big);
            rhs = big;
          }
          lp.add_row("ne" + idx({p, i, j}), std::move(t), Relation::LessEq, rhs);
        }
      }
    }
  }

  // McCormick envelope of z = alpha * y.
  for (int i = 0; i < r; ++i) {
    const int a = m.alpha[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < m.y[static_cast<std::size_t>(i)].size(); ++k) {
      const int yv = m.y[static_cast<std::size_t>(i)][k];
      const int zv = m.z[static_cast<std::size_t>(i)][k];
      const int v = m.v_lo + static_cast<int>(k);
      lp.add_row("mca" + idx({i, v}), {{zv, Rational(1)}, {a, Rational(-1)}}, Relation::LessEq, Rational(0));
      lp.add_row("mcy" + idx({i, v}), {{zv, Rational(1)}, {yv, Rational(-1)}}, Relation::LessEq, Rational(0));
      lp.add_row("mcl" + idx({i, v}), {{zv, Rational(1)}, {a, Rational(-1)}, {yv, Rational(-1)}}, Relation::GreaterEq, Rational(-1));
    }
  }

  for (int i = 0; i < r; ++i) {
    Terms t;
    for (int yv : m.y[static_cast<std::size_t>(i)]) t.emplace_back(yv, Rational(1));
    if (corrected) {
      lp.add_row("part" + idx({i}), std::move(t), Relation::Equal, Rational(1));
    } else {
      lp.add_row("one" + idx({i}), std::move(t), Relation::LessEq, Rational(1));
    }
  }

  auto load_terms = [&](int i) {
    Terms t;
    for (std::size_t k = 0; k < m.y[static_cast<std::size_t>(i)].size(); ++k) {
      add_term(t, m.y[static_cast<std::size_t>(i)][k], Rational(m.v_lo + static_cast<int>(k)));
    }
    return t;
  };
  if (m.symmetric) {
    Terms t;
    for (int i = 0; i < r; ++i) {
      for (auto& term : load_terms(i)) t.push_back(std::move(term));
    }
    lp.add_row("link", std::move(t), Relation::Equal, Rational(F));
  } else {
    for (int i = 0; i < r; ++i) {
      Terms t = load_terms(i);
      for (int p = 0; p < F; ++p) {
        for (const auto& [ri, xv] : m.x[static_cast<std::size_t>(p)]) {
          if (ri == i) t.emplace_back(xv, Rational(-1));
        }
      }
      lp.add_row("link" + idx({i}), std::move(t), Relation::Equal, Rational(0));
    }
    for (int p = 0; p < F; ++p) {
      Terms t;
      for (const auto& [ri, xv] : m.x[static_cast<std::size_t>(p)]) {
        (void)ri;
        t.emplace_back(xv, Rational(1));
      }
      lp.add_row("assign" + idx({p}), std::move(t), Relation::Equal, Rational(1));
    }
  }

  Terms simplex;
  for (int a : m.alpha) simplex.emplace_back(a, Rational(1));
  lp.add_row("simplex", std::move(simplex), Relation::Equal, Rational(1));

  if (corrected) {
    // Exactly one level is active, so the products on a resource sum to alpha.
    for (int i = 0; i < r; ++i) {
      Terms t;
      for (int zv : m.z[static_cast<std::size_t>(i)]) t.emplace_back(zv, Rational(1));
      t.emplace_back(m.alpha[static_cast<std::size_t>(i)], Rational(-1));
      lp.add_row("zsum" + idx({i}), std::move(t), Relation::Equal, Rational(0));
    }
  }
  lp.check();
  return m;
}

namespace {

struct Node {
  Rational bound;
  long id = 0;
  std::vector<std::pair<int, signed char>> fix;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return b.bound < a.bound;
    return a.id < b.id;
  }
};

bool is_binary_value(const Rational& v) { return v.is_zero() || v == Rational(1); }

/// Distance of v from the nearer of 0 and 1.
Rational fractionality(const Rational& v) { return min(v, Rational(1) - v); }

struct Incumbent {
  Rational value;
  LeaderStrategy strategy;
  Configuration config;
  std::optional<FollowerProfile> profile;
  std::string source;
};

void extract(const GameInstance& inst, const MilpModel& m, const std::vector<Rational>& point, Incumbent& out) {
  const int r = inst.resource_count();
  out.strategy.probabilities.assign(static_cast<std::size_t>(r), Rational(0));
  out.config.loads.assign(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    out.strategy.probabilities[static_cast<std::size_t>(i)] = point[static_cast<std::size_t>(m.alpha[static_cast<std::size_t>(i)])];
    const auto& ys = m.y[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < ys.size(); ++k) {
      if (point[static_cast<std::size_t>(ys[k])] == Rational(1)) out.config.loads[static_cast<std::size_t>(i)] = m.v_lo + static_cast<int>(k);
    }
  }
  if (!m.symmetric) {
    FollowerProfile prof;
    for (const auto& opts : m.x) {
      int pick = -1;
      for (const auto& [i, xv] : opts) {
        if (point[static_cast<std::size_t>(xv)] == Rational(1)) pick = i;
      }
      prof.assignment.push_back(pick);
    }
    out.profile = prof;
  } else {
    out.profile.reset();
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Continued-fraction approximation with a bounded denominator.
Rational rationalize(double x) {
  constexpr long long kMaxDen = 1'000'000;
  if (!std::isfinite(x) || std::abs(x) < 1e-11 || std::abs(x) > 1e12) return Rational(0);
  const bool neg = x < 0;
  double rest = std::abs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    const double whole = std::floor(rest);
    const auto a = static_cast<long long>(whole);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > kMaxDen) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = rest - whole;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - std::abs(x)) <= 1e-12 * std::max(1.0, std::abs(x)) ||
        frac < 1e-15) {
      break;
    }
    rest = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational r(p1, q1);
  return neg ? -r : r;
}

/// Bounds of every structural variable and row activity at one node.
struct Box {
  std::vector<std::optional<Rational>> lo, up;
};

/// min over the box of c^T x - y^T (A x - s), a valid lower bound on the node
/// relaxation for any y; rows whose activity is unbounded on the side that y
/// would use get a zero multiplier. With `feasibility` set, c is taken as 0.
std::optional<Rational> lagrangian_bound(const LinearProgram& lp, const Box& box, std::vector<Rational> y,
                                         bool feasibility) {
  const std::size_t n = lp.vars.size();
  std::vector<Rational> red(n);
  if (!feasibility) {
    for (std::size_t j = 0; j < n; ++j) red[j] = lp.vars[j].cost;
  }
  Rational total;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    const auto& row = lp.rows[k];
    Rational& yk = y[k];
    const int s = yk.sign();
    if (s == 0) continue;
    const bool has_lo = row.rel != Relation::LessEq;
    const bool has_up = row.rel != Relation::GreaterEq;
    if ((s > 0 && !has_lo) || (s < 0 && !has_up)) continue;
    total.add_mul(yk, row.rhs);
    const Rational neg = -yk;
    for (const auto& [j, a] : row.terms) red[static_cast<std::size_t>(j)].add_mul(neg, a);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const int s = red[j].sign();
    if (s == 0) continue;
    const auto& b = s > 0 ? box.lo[j] : box.up[j];
    if (!b) return std::nullopt;
    total.add_mul(red[j], *b);
  }
  return total;
}

// Fixings are applied to a persistent solver as a diff against the last node.
struct Fixer {
  std::vector<signed char> applied, want;
  std::vector<int> list;
  explicit Fixer(std::size_t n) : applied(n, -1), want(n, -1) {}
  template <class Set>
  void apply(const Node& node, Set&& set) {
    for (const auto& [v, val] : node.fix) want[static_cast<std::size_t>(v)] = val;
    std::vector<int> next;
    for (int v : list) {
      if (want[static_cast<std::size_t>(v)] < 0) {
        set(v, -1);
        applied[static_cast<std::size_t>(v)] = -1;
      }
    }
    for (const auto& [v, val] : node.fix) {
      if (applied[static_cast<std::size_t>(v)] != val) {
        set(v, val);
        applied[static_cast<std::size_t>(v)] = val;
      }
      next.push_back(v);
    }
    for (const auto& fv : node.fix) want[static_cast<std::size_t>(fv.first)] = -1;
    list = std::move(next);
  }
};

}  // namespace

SolveReport solve_ose_milp(const GameInstance& inst, const BnBParams& params) {
  if (params.node_limit <= 0 || params.time_limit_s <= 0) throw ValidationError("branch-and-bound limits must be positive");
  if (params.branching != "most-fractional" && params.branching != "first-fractional") {
    throw ValidationError("unknown branching rule '" + params.branching + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const MilpModel model = build_milp(inst, params.mode);
  const bool corrected = params.mode == MilpMode::Corrected;
  const bool guided = corrected && params.float_guide;
  const bool first_fractional = params.branching == "first-fractional";

  SolveReport rep;
  rep.solver = "milp";
  rep.sense = Sense::Optimistic;
  rep.extra["mode"] = to_string(params.mode);
  rep.extra["variant"] = model.symmetric ? "symmetric" : "general";
  rep.extra["lp_engine"] = guided ? "float-guided" : "exact";

  std::optional<Incumbent> inc;
  // Exact outcome LP for a decoded integral point; is_nash is asserted.
  auto offer_outcome = [&](const Configuration& config, const std::optional<FollowerProfile>& profile,
                           const std::string& source) {
    const Outcome o{config, profile};
    const LpOutcome lp = min_cost_alpha_for_outcome(inst, o);
    if (lp.status != LpStatus::Optimal || !lp.certified) return false;
    const LeaderStrategy sigma{lp.point};
    const VerifyReport ne = profile ? is_nash(inst, sigma, *profile) : is_nash_config(inst, sigma, config);
    if (!ne.is_equilibrium || leader_cost(inst, sigma, config) != lp.value) {
      throw std::logic_error("outcome LP returned a non-equilibrium commitment");
    }
    if (!inc || lp.value < inc->value) inc = Incumbent{lp.value, sigma, config, profile, source};
    return true;
  };

  if (corrected && params.incumbent == "heuristic") {
    const SolveReport h = run_best_response(inst, params.heuristic_seed, DynamicsBudget{20000, 5.0});
    if (h.converged && is_nash(inst, h.strategy, *h.profile).is_equilibrium) {
      offer_outcome(h.config, model.symmetric ? std::nullopt : h.profile, "heuristic");
    }
  } else if (params.incumbent != "heuristic" && params.incumbent != "none") {
    throw ValidationError("unknown incumbent source '" + params.incumbent + "'");
  }

  // With the zsum rows present, z <= alpha and z >= alpha + y - 1 are implied
  // by z >= 0, z <= y and the partition rows, so the relaxation omits them.
  LinearProgram relax = model.lp;
  if (corrected) {
    std::erase_if(relax.rows, [](const LinearProgram::Row& row) {
      return row.name.rfind("mca_", 0) == 0 || row.name.rfind("mcl_", 0) == 0;
    });
  }

  // Follower assignments are branched on before load indicators; in symmetric
  // models only the latter exist.
  std::vector<int> x_vars;
  for (const auto& opts : model.x) {
    for (const auto& [i, xv] : opts) x_vars.push_back(xv);
  }
  std::vector<int> y_vars;
  for (const auto& row : model.y) y_vars.insert(y_vars.end(), row.begin(), row.end());
  const std::vector<std::vector<int>> groups{x_vars, y_vars};
  std::optional<Simplex> sx;
  Fixer exact_fix(model.lp.vars.size());
  std::optional<detail::FloatSimplex> fsx;
  Fixer float_fix(model.lp.vars.size());
  if (guided) fsx.emplace(relax);

  Box base;
  for (const auto& v : relax.vars) {
    base.lo.push_back(v.lower);
    base.up.push_back(v.upper);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{Rational(0), next_id++, {}});
  bool root_done = false;
  bool hit_limit = false;
  long exact_nodes = 0;
  long exact_pivots = 0;
  std::optional<Rational> root_bound;

  // The child on the rounding side is evaluated next (plunging), which keeps
  // consecutive relaxations close; its sibling joins the best-bound queue.
  std::optional<Node> dive;
  auto branch_children = [&](const Node& node, const Rational& bound, int var, bool round_up) {
    for (signed char val : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
      Node child{bound, next_id++, node.fix};
      child.fix.emplace_back(var, val);
      if ((val == 1) == round_up) {
        dive = std::move(child);
      } else {
        open.push(std::move(child));
      }
    }
  };

  // Fully exact node evaluation.
  auto exact_node = [&](const Node& node) {
    if (!sx) sx.emplace(relax);
    ++exact_nodes;
    exact_fix.apply(node, [&](int v, int val) {
      if (val < 0) {
        sx->set_bounds(v, Rational(0), Rational(1));
      } else {
        sx->set_bounds(v, Rational(val), Rational(val));
      }
    });
    const LpOutcome out = sx->solve();
    exact_pivots += out.pivots;
    if (!out.certified) throw std::logic_error("node relaxation failed its certificate check");
    if (out.status == LpStatus::Unbounded) throw std::logic_error("bounded model reported unbounded");
    if (!root_done) {
      root_done = true;
      if (out.status == LpStatus::Optimal) root_bound = out.value;
    }
    if (out.status == LpStatus::Infeasible) return;
    if (node.id > 0 && out.value < node.bound) throw std::logic_error("child relaxation below its parent");
    if (inc && !(out.value < inc->value)) return;

    int branch = -1;
    Rational best_frac(0);
    for (const auto& group : groups) {
      for (int v : group) {
        const Rational& val = out.point[static_cast<std::size_t>(v)];
        if (is_binary_value(val)) continue;
        if (first_fractional) {
          branch = v;
          break;
        }
        const Rational f = fractionality(val);
        if (branch < 0 || best_frac < f) {
          branch = v;
          best_frac = f;
        }
      }
      if (branch >= 0) break;
    }
    if (branch < 0) {
      Incumbent cand;
      cand.value = out.value;
      cand.source = "branch-and-bound";
      extract(inst, model, out.point, cand);
      if (corrected) {
        const Rational check = leader_cost(inst, cand.strategy, cand.config);
        const VerifyReport ne = cand.profile ? is_nash(inst, cand.strategy, *cand.profile)
                                             : is_nash_config(inst, cand.strategy, cand.config);
        if (check != cand.value || !ne.is_equilibrium) throw std::logic_error("integral node does not decode to an equilibrium");
      }
      inc = std::move(cand);
      return;
    }
    branch_children(node, out.value, branch, Rational(1, 2) < out.point[static_cast<std::size_t>(branch)]);
  };

  // Float relaxation steers; bounds and incumbents are exact.
  auto guided_node = [&](const Node& node) {
    float_fix.apply(node, [&](int v, int val) {
      if (val < 0) {
        fsx->set_bounds(v, 0.0, 1.0);
      } else {
        fsx->set_bounds(v, val, val);
      }
    });
    const auto fr = fsx->solve(20L * static_cast<long>(relax.vars.size() + relax.rows.size()));
    Box box = base;
    for (const auto& [v, val] : node.fix) {
      box.lo[static_cast<std::size_t>(v)] = Rational(val);
      box.up[static_cast<std::size_t>(v)] = Rational(val);
    }
    std::vector<Rational> y;
    for (double d : fr.y) y.push_back(rationalize(d));
    if (fr.status == detail::FloatSimplex::Status::Infeasible) {
      auto lo = lagrangian_bound(relax, box, y, true);
      for (auto& q : y) q = -q;
      auto hi = lagrangian_bound(relax, box, y, true);
      if ((lo && lo->sign() > 0) || (hi && hi->sign() > 0)) {
        root_done = true;
        return;
      }
      exact_node(node);
      return;
    }
    if (fr.status != detail::FloatSimplex::Status::Optimal) {
      exact_node(node);
      return;
    }
    std::optional<Rational> lb = lagrangian_bound(relax, box, y, false);
    Rational bound = lb && node.bound < *lb ? *lb : node.bound;
    if (!root_done) {
      root_done = true;
      root_bound = bound;
    }
    if (inc && !(bound < inc->value)) return;

    constexpr double kIntTol = 1e-6;
    int branch = -1;
    double best_frac = kIntTol;
    for (const auto& group : groups) {
      for (int v : group) {
        const double x = fr.x[static_cast<std::size_t>(v)];
        const double f = std::min(x, 1.0 - x);
        if (f <= kIntTol) continue;
        if (first_fractional) {
          branch = v;
          break;
        }
        if (f > best_frac) {
          branch = v;
          best_frac = f;
        }
      }
      if (branch >= 0) break;
    }
    if (branch < 0) {
      const int r = inst.resource_count();
      Configuration config;
      config.loads.assign(static_cast<std::size_t>(r), 0);
      for (int i = 0; i < r; ++i) {
        const auto& ys = model.y[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < ys.size(); ++k) {
          if (fr.x[static_cast<std::size_t>(ys[k])] > 0.5) config.loads[static_cast<std::size_t>(i)] = model.v_lo + static_cast<int>(k);
        }
      }
      std::optional<FollowerProfile> profile;
      bool decoded = true;
      if (!model.symmetric) {
        profile.emplace();
        for (const auto& opts : model.x) {
          int pick = -1;
          for (const auto& [i, xv] : opts) {
            if (fr.x[static_cast<std::size_t>(xv)] > 0.5) pick = i;
          }
          decoded = decoded && pick >= 0;
          profile->assignment.push_back(pick);
        }
        if (decoded) decoded = config_of(inst, *profile).loads == config.loads;
      } else {
        int sum = 0;
        for (int l : config.loads) sum += l;
        decoded = sum == inst.followers;
      }
      if (decoded) offer_outcome(config, profile, "branch-and-bound");
      if (inc && !(bound < inc->value)) return;
      exact_node(node);
      return;
    }
    if (inc && fr.value >= inc->value.to_double() - 1e-7 * (1.0 + std::abs(inc->value.to_double()))) {
      exact_node(node);
      return;
    }
    branch_children(node, bound, branch, fr.x[static_cast<std::size_t>(branch)] > 0.5);
  };

  while (dive || !open.empty()) {
    if (rep.stats.nodes >= params.node_limit || seconds_since(t0) > params.time_limit_s) {
      if (dive) open.push(std::move(*dive));
      hit_limit = true;
      break;
    }
    Node node;
    if (dive) {
      node = std::move(*dive);
      dive.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (inc && root_done && !(node.bound < inc->value)) continue;
    ++rep.stats.nodes;
    ++rep.stats.lp_solves;
    if (guided) {
      guided_node(node);
    } else {
      exact_node(node);
    }
  }

  rep.stats.pivots = exact_pivots + (fsx ? fsx->total_pivots() : 0);
  if (guided) rep.extra["exact_nodes"] = exact_nodes;
  std::optional<Rational> bound;
  if (hit_limit) {
    for (auto q = open; !q.empty(); q.pop()) {
      if (!bound || q.top().bound < *bound) bound = q.top().bound;
    }
    if (inc && (!bound || inc->value < *bound)) bound = inc->value;
  } else if (inc) {
    bound = inc->value;
  }
  rep.bound = bound;
  if (root_bound) rep.extra["root_bound"] = root_bound->to_string();
  if (inc) {
    rep.strategy = inc->strategy;
    rep.config = inc->config;
    rep.profile = inc->profile;
    rep.leader_cost = inc->value;
    rep.extra["incumbent_source"] = inc->source;
  }
  if (hit_limit) {
    rep.status = "limit";
    rep.optimal = false;
  } else if (!inc) {
    rep.status = "infeasible";
  } else {
    rep.status = "optimal";
    rep.optimal = true;
  }
  if (!corrected) {
    rep.guarantee = false;
    if (inc) rep.extra["recheck"] = recheck_report(inst, rep);
  }
  rep.stats.wall_ms = seconds_since(t0) * 1000.0;
  return rep;
}

}  // namespace leadcon
