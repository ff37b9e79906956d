#include <algorithm>
#include <limits>
#include <numeric>

#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"

namespace leadcon {

Monotone parse_monotone(const std::string& text) {
  if (text == "none") return Monotone::None;
  if (text == "weak") return Monotone::Weak;
  if (text == "strict") return Monotone::Strict;
  throw ValidationError("monotone must be none, weak or strict");
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return lo + v % range;
  }
}

namespace {

std::vector<int> sample_actions(std::mt19937_64& rng, int r, int k) {
  std::vector<int> all(static_cast<std::size_t>(r));
  std::iota(all.begin(), all.end(), 0);
  if (k == 0 || k == r) return all;
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(r - 1)));
    std::swap(all[static_cast<std::size_t>(i)], all[j]);
  }
  all.resize(static_cast<std::size_t>(k));
  std::sort(all.begin(), all.end());
  return all;
}

CostTable sample_table(std::mt19937_64& rng, int n, std::uint64_t hi, Monotone mode) {
  std::vector<std::uint64_t> v;
  if (mode == Monotone::Strict) {
    const std::uint64_t top = std::max<std::uint64_t>(hi, static_cast<std::uint64_t>(n));
    while (static_cast<int>(v.size()) < n) {
      const std::uint64_t c = uniform_int(rng, 1, top);
      if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
    }
  } else {
    for (int x = 0; x < n; ++x) v.push_back(uniform_int(rng, 1, hi));
  }
  if (mode != Monotone::None) std::sort(v.begin(), v.end());
  CostTable t;
  for (auto c : v) t.emplace_back(static_cast<long long>(c));
  return t;
}

}  // namespace

GameInstance gen_random(const RandomSpec& spec) {
  if (spec.followers < 0) throw ValidationError("follower count must be nonnegative");
  if (spec.resources < 1) throw ValidationError("at least one resource is required");
  if (spec.actions_per_player < 0 || spec.actions_per_player > spec.resources) {
    throw ValidationError("actions per player must lie in [1, r]");
  }
  std::mt19937_64 rng(spec.seed);
  GameInstance g;
  g.followers = spec.followers;
  for (int i = 0; i < spec.resources; ++i) g.resources.push_back("r" + std::to_string(i + 1));
  g.leader_actions = sample_actions(rng, spec.resources, spec.actions_per_player);
  for (int p = 0; p < spec.followers; ++p) g.follower_actions.push_back(sample_actions(rng, spec.resources, spec.actions_per_player));
  const auto hi = static_cast<std::uint64_t>(std::max(1, spec.followers * spec.resources));
  const int n = spec.followers + 1;
  for (int i = 0; i < spec.resources; ++i) {
    g.leader_costs.push_back(sample_table(rng, n, hi, spec.monotone));
    g.follower_costs.push_back(sample_table(rng, n, hi, spec.monotone));
  }
  g.metadata = {{"generator", "random"},
                {"seed", spec.seed},
                {"actions_per_player", spec.actions_per_player == 0 ? nlohmann::json("ALL") : nlohmann::json(spec.actions_per_player)},
                {"monotone", spec.monotone == Monotone::None ? "none" : (spec.monotone == Monotone::Weak ? "weak" : "strict")}};
  g.validate();
  return g;
}

}  // namespace leadcon
