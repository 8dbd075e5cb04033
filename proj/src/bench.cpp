#include "covertree/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "covertree/generator.hpp"

namespace covertree {

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::Symmetric: return "symmetric";
    case Construction::Descendant: return "descendant";
    case Construction::Father: return "father";
  }
  return "unknown";
}

namespace {

Bitree build_for(Construction c, const NormalizedTree& norm) {
  switch (c) {
    case Construction::Symmetric: return build_symmetric(norm);
    case Construction::Descendant: return build_descendant(norm);
    case Construction::Father:
    default: return build_father_subdivided(norm).bitree;
  }
}

}  // namespace

std::vector<BenchRecord> run_bench(std::span<const NodeId> sizes, int reps, std::uint64_t seed,
                                   std::span<const Construction> constructions) {
  reps = std::max(reps, 3);
  std::vector<BenchRecord> records;
  for (NodeId n : sizes) {
    if (n < 2) throw std::invalid_argument("run_bench: sizes must be >= 2");
    GenConfig cfg;
    cfg.seed = seed + static_cast<std::uint64_t>(n);
    cfg.n_min = cfg.n_max = n;
    cfg.cost_min = 1;
    cfg.cost_max = 1000;
    cfg.pi_min = 0;
    cfg.pi_max = 1000;
    cfg.rho_min = 0;
    cfg.rho_max = 20000;
    Instance inst = gen_random_tree(cfg);
    NormalizedTree norm = normalize_degree(inst, 1);

    for (Construction c : constructions) {
      Bitree b = build_for(c, norm);
      std::vector<std::int64_t> times;
      engine::EngineStats stats;
      for (int r = 0; r < reps; ++r) {
        stats = {};
        auto start = std::chrono::steady_clock::now();
        PenaltyVector p = compute_all_penalties(b, CoverageMode::Weak, &stats);
        auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        if (p.size() != static_cast<std::size_t>(b.n) + 1)
          throw std::logic_error("run_bench: malformed penalty vector");
      }
      std::sort(times.begin(), times.end());
      BenchRecord rec;
      rec.n = n;
      rec.construction = c;
      rec.median_ns = times[times.size() / 2];
      rec.reps = reps;
      rec.seed = seed;
      rec.merge_scan_touches = stats.merge_scan_touches;
      records.push_back(rec);
    }
  }
  return records;
}

std::string bench_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "n,construction,median_ns,reps,seed\n";
  for (const auto& r : records)
    out << r.n << ',' << construction_name(r.construction) << ',' << r.median_ns << ',' << r.reps
        << ',' << r.seed << '\n';
  return out.str();
}

}  // namespace covertree
