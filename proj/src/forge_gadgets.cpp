#include <map>
#include <numeric>
#include <sstream>

#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"

namespace leadcon {

nlohmann::json Certificate::to_json() const {
  return {{"kind", kind},
          {"epsilon", epsilon.to_string()},
          {"yes_value", yes_value.to_string()},
          {"no_value_bound", no_value_bound.to_string()},
          {"direction", direction}};
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  bool header = false;
  int declared = 0;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.variables >> declared) || fmt != "cnf" || f.variables < 0 || declared < 0) {
        throw ValidationError("malformed DIMACS header");
      }
      header = true;
      continue;
    }
    if (!header) throw ValidationError("clause before the DIMACS header");
    std::istringstream toks(line);
    long long lit = 0;
    while (toks >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) throw ValidationError("clause with " + std::to_string(pending.size()) + " literals; exactly 3 required");
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (lit > f.variables || -lit > f.variables) throw ValidationError("literal index exceeds the declared variable count");
      pending.push_back(static_cast<int>(lit));
    }
    if (!toks.eof()) throw ValidationError("non-integer token in clause");
  }
  if (!header) throw ValidationError("missing DIMACS header");
  if (!pending.empty()) throw ValidationError("unterminated clause");
  return f;
}

bool brute_force_satisfiable(const CnfFormula& f) {
  if (f.variables > 24) throw SizeGuardExceeded("too many variables for exhaustive search");
  for (std::uint32_t mask = 0; mask < (1U << f.variables); ++mask) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool sat = false;
      for (int lit : c) {
        const bool val = ((mask >> (std::abs(lit) - 1)) & 1U) != 0;
        sat = sat || (lit > 0 ? val : !val);
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

namespace {

class Builder {
 public:
  int resource(const std::string& id) {
    const auto [it, fresh] = index_.emplace(id, static_cast<int>(g.resources.size()));
    if (fresh) g.resources.push_back(id);
    return it->second;
  }
  void follower(std::vector<int> acts) {
    std::sort(acts.begin(), acts.end());
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    g.follower_actions.push_back(std::move(acts));
  }
  /// Table from a function of congestion x = 1..n.
  template <class F>
  CostTable table(F&& f) const {
    CostTable t;
    for (int x = 1; x <= static_cast<int>(g.follower_actions.size()) + 1; ++x) t.push_back(f(x));
    return t;
  }
  void costs(int i, CostTable leader, CostTable follower) {
    g.leader_costs.resize(g.resources.size());
    g.follower_costs.resize(g.resources.size());
    g.leader_costs[static_cast<std::size_t>(i)] = std::move(leader);
    g.follower_costs[static_cast<std::size_t>(i)] = std::move(follower);
  }
  GameInstance finish() {
    g.followers = static_cast<int>(g.follower_actions.size());
    g.validate();
    return std::move(g);
  }

  GameInstance g;

 private:
  std::map<std::string, int> index_;
};

std::string lit_name(int lit) { return (lit > 0 ? "x" : "nx") + std::to_string(std::abs(lit)); }

void check_formula(const CnfFormula& f, const Rational& eps, const Rational& eps_cap) {
  if (!(eps.sign() > 0 && eps < eps_cap)) throw ValidationError("epsilon must lie in (0, " + eps_cap.to_string() + ")");
  if (f.clauses.empty()) throw ValidationError("the 3SAT gadgets need at least one clause");
  if (f.variables < 1) throw ValidationError("the 3SAT gadgets need at least one variable");
  for (const auto& c : f.clauses) {
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > f.variables) throw ValidationError("malformed formula literal");
    }
  }
}

nlohmann::json formula_json(const CnfFormula& f) {
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : f.clauses) cl.push_back({c[0], c[1], c[2]});
  return {{"variables", f.variables}, {"clauses", cl}};
}

}  // namespace

Gadget gen_3sat_ose(const CnfFormula& f, const Rational& eps) {
  check_formula(f, eps, Rational(4));
  const int m = static_cast<int>(f.clauses.size());
  const int s = f.variables;
  Builder b;
  const int rt = b.resource("r_t");
  std::vector<int> rphi;
  for (int c = 1; c <= m; ++c) rphi.push_back(b.resource("r_phi" + std::to_string(c)));
  for (int v = 1; v <= s; ++v) {
    for (const char* pre : {"x", "nx"}) {
      b.resource(std::string("r_") + pre + std::to_string(v));
      b.resource(std::string("r_") + pre + std::to_string(v) + "_t");
    }
  }
  for (int c = 1; c <= m; ++c) {
    for (int v = 1; v <= s; ++v) {
      b.resource("r_phi" + std::to_string(c) + "_x" + std::to_string(v));
      b.resource("r_phi" + std::to_string(c) + "_nx" + std::to_string(v));
    }
  }
  for (int c = 1; c <= m; ++c) {
    std::vector<int> acts{rphi[static_cast<std::size_t>(c - 1)]};
    for (int lit : f.clauses[static_cast<std::size_t>(c - 1)]) acts.push_back(b.resource("r_phi" + std::to_string(c) + "_" + lit_name(lit)));
    b.follower(acts);
    b.follower({rphi[static_cast<std::size_t>(c - 1)], rt});
  }
  for (int v = 1; v <= s; ++v) {
    const std::string x = "x" + std::to_string(v);
    const std::string nx = "nx" + std::to_string(v);
    for (int k = 0; k < m; ++k) {
      b.follower({b.resource("r_" + x + "_t"), b.resource("r_" + x)});
      b.follower({b.resource("r_" + nx + "_t"), b.resource("r_" + nx)});
    }
    b.follower({rt, b.resource("r_" + x + "_t"), b.resource("r_" + nx + "_t")});
  }
  for (int c = 1; c <= m; ++c) {
    for (int v = 1; v <= s; ++v) {
      for (const char* pre : {"x", "nx"}) {
        const std::string lit = std::string(pre) + std::to_string(v);
        b.follower({b.resource("r_" + lit), b.resource("r_phi" + std::to_string(c) + "_" + lit)});
      }
    }
  }
  auto step = [&](Rational first, Rational rest) {
    return b.table([=](int x) { return x == 1 ? first : rest; });
  };
  for (int c = 1; c <= m; ++c) {
    const auto t = step(Rational(2), Rational(5));
    b.costs(rphi[static_cast<std::size_t>(c - 1)], t, t);
  }
  for (int v = 1; v <= s; ++v) {
    for (const char* pre : {"x", "nx"}) {
      const std::string lit = std::string(pre) + std::to_string(v);
      const auto tv = b.table([=](int x) { return x <= m ? Rational(0) : Rational(7); });
      b.costs(b.resource("r_" + lit), tv, tv);
      const auto tt = step(Rational(0), Rational(6));
      b.costs(b.resource("r_" + lit + "_t"), tt, tt);
      for (int c = 1; c <= m; ++c) {
        const auto tp = step(Rational(1), Rational(6));
        b.costs(b.resource("r_phi" + std::to_string(c) + "_" + lit), tp, tp);
      }
    }
  }
  const auto ttop = step(eps, Rational(4));
  b.costs(rt, ttop, ttop);
  b.g.leader_actions = {rt};
  Gadget out;
  out.instance = b.finish();
  out.certificate = Certificate{"3sat-ose", eps, eps, Rational(4), "yes->eps"};
  out.instance.metadata = {{"generator", "3sat-ose"}, {"formula", formula_json(f)}, {"certificate", out.certificate.to_json()}};
  return out;
}

Gadget gen_3sat_pse(const CnfFormula& f, const Rational& eps) {
  check_formula(f, eps, Rational(4));
  const int m = static_cast<int>(f.clauses.size());
  const int s = f.variables;
  Builder b;
  const int rt = b.resource("r_t");
  for (int c = 1; c <= m; ++c) b.resource("r_phi" + std::to_string(c));
  for (int v = 1; v <= s; ++v) {
    b.resource("r_x" + std::to_string(v) + "_t");
    b.resource("r_x" + std::to_string(v));
    b.resource("r_nx" + std::to_string(v));
  }
  for (int c = 1; c <= m; ++c) {
    for (int v = 1; v <= s; ++v) {
      b.resource("r_phi" + std::to_string(c) + "_x" + std::to_string(v));
      b.resource("r_phi" + std::to_string(c) + "_nx" + std::to_string(v));
    }
  }
  for (int c = 1; c <= m; ++c) {
    const int rphi = b.resource("r_phi" + std::to_string(c));
    for (int lit : f.clauses[static_cast<std::size_t>(c - 1)]) {
      b.follower({rphi, b.resource("r_phi" + std::to_string(c) + "_" + lit_name(lit))});
    }
    b.follower({rphi, rt});
  }
  for (int v = 1; v <= s; ++v) {
    const int rvt = b.resource("r_x" + std::to_string(v) + "_t");
    b.follower({rvt, b.resource("r_x" + std::to_string(v))});
    b.follower({rvt, b.resource("r_nx" + std::to_string(v))});
    b.follower({rvt, rt});
  }
  for (int c = 1; c <= m; ++c) {
    for (int v = 1; v <= s; ++v) {
      for (const char* pre : {"x", "nx"}) {
        const std::string lit = std::string(pre) + std::to_string(v);
        b.follower({b.resource("r_" + lit), b.resource("r_phi" + std::to_string(c) + "_" + lit)});
      }
    }
  }
  auto step = [&](Rational first, Rational rest) {
    return b.table([=](int x) { return x == 1 ? first : rest; });
  };
  for (int c = 1; c <= m; ++c) {
    const auto t = step(Rational(2), Rational(5));
    b.costs(b.resource("r_phi" + std::to_string(c)), t, t);
  }
  for (int v = 1; v <= s; ++v) {
    const auto tvt = step(Rational(2), Rational(5));
    b.costs(b.resource("r_x" + std::to_string(v) + "_t"), tvt, tvt);
    for (const char* pre : {"x", "nx"}) {
      const std::string lit = std::string(pre) + std::to_string(v);
      const auto tv = b.table([=](int x) { return x <= m ? Rational(1) : Rational(6); });
      b.costs(b.resource("r_" + lit), tv, tv);
      for (int c = 1; c <= m; ++c) {
        const auto tp = step(Rational(0), Rational(7));
        b.costs(b.resource("r_phi" + std::to_string(c) + "_" + lit), tp, tp);
      }
    }
  }
  const auto ttop = b.table([=](int x) { return x <= m + s ? eps : Rational(4); });
  b.costs(rt, ttop, ttop);
  b.g.leader_actions = {rt};
  Gadget out;
  out.instance = b.finish();
  out.certificate = Certificate{"3sat-pse", eps, Rational(4), eps, "no->eps"};
  out.instance.metadata = {{"generator", "3sat-pse"}, {"formula", formula_json(f)}, {"certificate", out.certificate.to_json()}};
  return out;
}

namespace {

/// Returns s = sum / 2 after the shared input checks.
long long check_partition(const PartitionInput& in, const Rational& eps) {
  if (!(eps.sign() > 0 && eps < Rational(1))) throw ValidationError("epsilon must lie in (0, 1)");
  if (in.values.empty() || in.values.size() % 2 != 0) throw ValidationError("|S| must be even and positive");
  long long sum = 0;
  for (long long x : in.values) {
    if (x <= 0) throw ValidationError("partition values must be positive");
    sum += x;
  }
  if (sum % 2 != 0) throw ValidationError("the sum of S must be even");
  const long long s = sum / 2;
  for (long long x : in.values) {
    if (x > s) throw ValidationError("every value must be at most half the total");
  }
  return s;
}

nlohmann::json values_json(const PartitionInput& in) {
  nlohmann::json j = {{"values", in.values}};
  if (in.k > 0) j["k"] = in.k;
  return j;
}

}  // namespace

bool brute_force_partition(const PartitionInput& in) {
  const auto n = in.values.size();
  if (n > 24) throw SizeGuardExceeded("too many values for exhaustive search");
  const long long total = std::accumulate(in.values.begin(), in.values.end(), 0LL);
  if (total % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    long long sum = 0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        sum += in.values[i];
        ++count;
      }
    }
    if (2 * sum == total && (in.k == 0 || count == in.k)) return true;
  }
  return false;
}

Gadget gen_kpartition(const PartitionInput& in, const Rational& eps) {
  const long long s = check_partition(in, eps);
  const int size = static_cast<int>(in.values.size());
  if (in.k < 1 || 2 * in.k > size) throw ValidationError("K must lie in [1, |S|/2]");
  if (size < 4) throw ValidationError("the partition gadgets need |S| >= 4");
  const Rational rs(s);
  const Rational s2 = rs * rs;
  const Rational s4 = s2 * s2;
  const int top = 4 * size - 2 * in.k;
  const int followers = 4 * size + 2;
  Builder b;
  for (int f = 0; f < followers; ++f) b.g.follower_actions.emplace_back();
  const int t1 = b.resource("r_t1");
  const int t2 = b.resource("r_t2");
  b.costs(t1, b.table([&](int) { return s4; }), b.table([&](int x) {
            if (x <= top) return Rational(3) * s2;
            if (x == top + 1) return Rational(2) * rs;
            if (x == top + 2) return Rational(1);
            return Rational(0);
          }));
  b.costs(t2, b.table([&](int) { return s4; }), b.table([&](int x) { return x == 1 ? Rational(1) : Rational(4) * s2; }));
  for (int i = 0; i < size; ++i) {
    const Rational w(in.values[static_cast<std::size_t>(i)], s);
    const Rational inv = Rational(1) / w;
    const int ri = b.resource("r_" + std::to_string(i + 1));
    b.costs(ri, b.table([&](int x) { return x == 3 ? eps : rs; }), b.table([&](int x) {
              switch (x) {
                case 1: return Rational(2) * rs;
                case 2: return Rational(0);
                case 3: return inv;
                case 4: return (Rational(2) * rs - inv + Rational(1)) / w;
                default: return Rational(4) * s2;
              }
            }));
  }
  std::vector<int> all(b.g.resources.size());
  std::iota(all.begin(), all.end(), 0);
  b.g.leader_actions = all;
  for (auto& a : b.g.follower_actions) a = all;
  Gadget out;
  out.instance = b.finish();
  out.certificate = Certificate{"kpartition-ose", eps, eps, Rational(1), "yes->eps"};
  out.instance.metadata = {{"generator", "kpartition"}, {"input", values_json(in)}, {"certificate", out.certificate.to_json()}};
  return out;
}

Gadget gen_partition(const PartitionInput& in, const Rational& eps) {
  const long long s = check_partition(in, eps);
  if (s < 2) throw ValidationError("degenerate input: s = 1 makes a cost denominator vanish");
  const Rational rs(s);
  const Rational s4 = rs * rs * rs * rs;
  const Rational tiny = Rational(1) / s4;
  for (long long x : in.values) {
    const Rational w(x, s);
    if ((w - tiny).sign() <= 0 || (Rational(1) - w - tiny).sign() <= 0) {
      throw ValidationError("value " + std::to_string(x) + " makes a cost denominator nonpositive");
    }
  }
  const int size = static_cast<int>(in.values.size());
  if (size < 4) throw ValidationError("the partition gadgets need |S| >= 4");
  Builder b;
  for (int f = 0; f < 3 * size; ++f) b.g.follower_actions.emplace_back();
  const int rt = b.resource("r_t");
  b.costs(rt, b.table([&](int) { return s4; }), b.table([&](int) { return Rational(1); }));
  for (int i = 0; i < size; ++i) {
    const Rational w(in.values[static_cast<std::size_t>(i)], s);
    const int ri = b.resource("r_" + std::to_string(i + 1));
    b.costs(ri, b.table([&](int x) { return (x == 2 || x == 4) ? s4 : eps; }), b.table([&](int x) {
              switch (x) {
                case 1: return Rational(0);
                case 2: return Rational(1) / (w - tiny);
                case 3: return Rational(1) / (Rational(1) - w - tiny);
                case 4: return Rational(0);
                default: return rs;
              }
            }));
  }
  std::vector<int> all(b.g.resources.size());
  std::iota(all.begin(), all.end(), 0);
  b.g.leader_actions = all;
  for (auto& a : b.g.follower_actions) a = all;
  Gadget out;
  out.instance = b.finish();
  out.certificate = Certificate{"partition-pse", eps, eps, eps, "yes->eps"};
  out.instance.metadata = {{"generator", "partition"}, {"input", values_json(in)}, {"certificate", out.certificate.to_json()}};
  return out;
}

}  // namespace leadcon
