#include "leadcon/dp.hpp"

#include <algorithm>
#include <chrono>

#include "leadcon/errors.hpp"

namespace leadcon {

DpSolver::DpSolver(std::vector<std::vector<Rational>> chat, int followers, DpObjective objective)
    : chat_(std::move(chat)), followers_(followers), obj_(std::move(objective)) {
  for (const auto& row : chat_) {
    if (static_cast<int>(row.size()) < followers_ + 2) throw ValidationError("cost rows must cover congestion 0..F+1");
    for (int x = 1; x <= followers_ + 1; ++x) vals_.push_back(row[static_cast<std::size_t>(x)]);
  }
  std::sort(vals_.begin(), vals_.end());
  vals_.erase(std::unique(vals_.begin(), vals_.end()), vals_.end());
  if (vals_.size() >= (1U << 18) - 1 || chat_.size() >= (1U << 12) || followers_ >= (1 << 16)) {
    throw SizeGuardExceeded("instance too large for the state encoding");
  }
  rank_.resize(chat_.size());
  for (std::size_t h = 0; h < chat_.size(); ++h) {
    rank_[h].assign(static_cast<std::size_t>(followers_ + 2), -1);
    for (int x = 1; x <= followers_ + 1; ++x) rank_[h][static_cast<std::size_t>(x)] = rank(chat_[h][static_cast<std::size_t>(x)]);
  }
}

int DpSolver::rank(const Rational& v) const {
  return static_cast<int>(std::lower_bound(vals_.begin(), vals_.end(), v) - vals_.begin());
}

std::uint64_t DpSolver::key(int h, int b, int mi, int vi) {
  return (static_cast<std::uint64_t>(h) << 52) | (static_cast<std::uint64_t>(b) << 36) |
         (static_cast<std::uint64_t>(mi) << 18) | static_cast<std::uint64_t>(vi);
}

const DpSolver::Entry& DpSolver::eval(int h, int b, int mi, int vi) {
  const std::uint64_t k0 = key(h, b, mi, vi);
  if (auto it = memo_.find(k0); it != memo_.end()) return it->second;
  Entry e;
  if (h == 0) {
    e.feasible = b == 0;
  } else {
    const auto hr = static_cast<std::size_t>(h - 1);
    const int top = static_cast<int>(vals_.size());
    for (int k = 0; k <= b; ++k) {
      const int up_rank = rank_[hr][static_cast<std::size_t>(k + 1)];
      if (k > 0 && mi < top && rank_[hr][static_cast<std::size_t>(k)] > mi) continue;
      if (vi > 0 && up_rank < vi - 1) continue;
      const int m_next = std::min(mi, up_rank);
      const int v_next = k > 0 ? std::max(vi, rank_[hr][static_cast<std::size_t>(k)] + 1) : vi;
      const Entry& child = eval(h - 1, b - k, m_next, v_next);
      if (!child.feasible) continue;
      Rational cand = child.value + obj_.g[hr][static_cast<std::size_t>(k)];
      const bool better = !e.feasible || (obj_.maximize ? cand > e.value : cand < e.value);
      if (better) {
        e.feasible = true;
        e.value = std::move(cand);
        e.choice = k;
      }
    }
  }
  return memo_.emplace(k0, std::move(e)).first->second;
}

std::optional<Rational> DpSolver::state_value(int h, int b, int m_rank, int v_rank) {
  const Entry& e = eval(h, b, m_rank, v_rank);
  if (!e.feasible) return std::nullopt;
  return e.value;
}

DpResult DpSolver::solve() {
  DpResult res;
  const int r = static_cast<int>(chat_.size());
  int mi = static_cast<int>(vals_.size());
  int vi = 0;
  const Entry& top = eval(r, followers_, mi, vi);
  res.feasible = top.feasible;
  res.states = states();
  if (!top.feasible) return res;
  res.value = top.value;
  res.config.loads.assign(static_cast<std::size_t>(r), 0);
  int b = followers_;
  for (int h = r; h >= 1; --h) {
    const int k = memo_.at(key(h, b, mi, vi)).choice;
    const auto hr = static_cast<std::size_t>(h - 1);
    res.config.loads[hr] = k;
    const int up_rank = rank_[hr][static_cast<std::size_t>(k + 1)];
    const int m_next = std::min(mi, up_rank);
    const int v_next = k > 0 ? std::max(vi, rank_[hr][static_cast<std::size_t>(k)] + 1) : vi;
    mi = m_next;
    vi = v_next;
    b -= k;
  }
  return res;
}

DpResult dp_optimal_ne(const std::vector<std::vector<Rational>>& chat, int followers, const DpObjective& objective) {
  DpSolver s(chat, followers, objective);
  return s.solve();
}

std::vector<std::vector<Rational>> shifted_costs(const GameInstance& inst, int lead) {
  std::vector<std::vector<Rational>> chat(static_cast<std::size_t>(inst.resource_count()));
  for (int h = 0; h < inst.resource_count(); ++h) {
    for (int x = 0; x <= inst.followers + 1; ++x) {
      const int shifted = x + (h == lead ? 1 : 0);
      chat[static_cast<std::size_t>(h)].push_back(x == 0 ? Rational(0) : inst.cf(h, shifted));
    }
  }
  return chat;
}

DpObjective social_cost_objective(const std::vector<std::vector<Rational>>& chat, int followers, bool maximize) {
  DpObjective o;
  o.maximize = maximize;
  for (const auto& row : chat) {
    std::vector<Rational> g;
    for (int k = 0; k <= followers; ++k) g.push_back(Rational(k) * row[static_cast<std::size_t>(k)]);
    o.g.push_back(std::move(g));
  }
  return o;
}

DpObjective leader_objective(const GameInstance& inst, int lead, bool maximize) {
  DpObjective o;
  o.maximize = maximize;
  for (int h = 0; h < inst.resource_count(); ++h) {
    std::vector<Rational> g;
    for (int k = 0; k <= inst.followers; ++k) g.push_back(h == lead ? inst.cl(h, k + 1) : Rational(0));
    o.g.push_back(std::move(g));
  }
  return o;
}

SolveReport solve_pure_commitment(const GameInstance& inst, Sense sense) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!classify(inst).symmetric) throw NotSymmetric();
  SolveReport rep;
  rep.solver = "dp";
  rep.sense = sense;
  std::optional<Rational> best;
  long states = 0;
  for (int lead : inst.leader_actions) {
    const DpResult r = dp_optimal_ne(shifted_costs(inst, lead), inst.followers,
                                     leader_objective(inst, lead, sense == Sense::Pessimistic));
    states += r.states;
    if (!r.feasible) continue;
    if (!best || r.value < *best) {
      best = r.value;
      rep.strategy = LeaderStrategy::pure(inst, lead);
      rep.config = r.config;
    }
  }
  rep.stats.nodes = states;
  rep.extra["pure_commitment"] = true;
  if (!best) {
    rep.status = "infeasible";
  } else {
    rep.leader_cost = best;
    rep.optimal = true;
  }
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace leadcon
