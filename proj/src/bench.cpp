#include "leadcon/bench.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace leadcon {

int bench_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEADCON_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  struct Job {
    std::string id;
    RandomSpec gen;
  };
  std::vector<Job> jobs;
  for (int f : spec.followers) {
    for (int r : spec.resources) {
      for (std::uint64_t seed : spec.seeds) {
        RandomSpec g;
        g.followers = f;
        g.resources = r;
        g.seed = seed;
        g.monotone = spec.monotone;
        g.actions_per_player = spec.actions_per_player;
        jobs.push_back({"f" + std::to_string(f) + "-r" + std::to_string(r) + "-s" + std::to_string(seed), g});
      }
    }
  }

  const std::size_t per_job = spec.algos.size();
  std::vector<BenchRow> rows(jobs.size() * per_job);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const GameInstance inst = gen_random(jobs[k].gen);
        for (std::size_t a = 0; a < per_job; ++a) {
          SolveOptions opts = spec.solve;
          opts.algo = spec.algos[a];
          opts.seed = jobs[k].gen.seed;
          const SolveReport rep = solve(inst, opts);
          BenchRow& row = rows[k * per_job + a];
          row.id = jobs[k].id;
          row.n = inst.players();
          row.r = inst.resource_count();
          row.algo = spec.algos[a];
          row.sense = opts.sense;
          row.status = rep.status;
          row.leader_cost = rep.leader_cost;
          row.wall_ms = rep.stats.wall_ms;
          row.nodes = rep.stats.nodes;
          row.converged = rep.converged;
        }
        const BenchRow& ref = rows[k * per_job];
        for (std::size_t a = 0; a < per_job; ++a) {
          BenchRow& row = rows[k * per_job + a];
          if (ref.leader_cost && row.leader_cost && ref.leader_cost->sign() > 0) row.ratio = *row.leader_cost / *ref.leader_cost;
        }
      } catch (...) {
        const std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::min<int>(bench_threads(spec.threads), static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "id,n,r,algo,sense,status,leader_cost,wall_ms,nodes,converged,ratio\n";
  for (const auto& row : rows) {
    out << row.id << ',' << row.n << ',' << row.r << ',' << row.algo << ',' << to_string(row.sense) << ',' << row.status
        << ',' << (row.leader_cost ? row.leader_cost->to_string() : "") << ',' << row.wall_ms << ',' << row.nodes << ','
        << (row.converged ? "true" : "false") << ',' << (row.ratio ? row.ratio->to_string() : "") << '\n';
  }
}

}  // namespace leadcon
