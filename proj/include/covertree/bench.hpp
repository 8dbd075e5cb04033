#pragma once

#include <span>

#include "covertree/penalty_engine.hpp"

namespace covertree {

enum class Construction { Symmetric, Descendant, Father };

const char* construction_name(Construction c);

struct BenchRecord {
  NodeId n = 0;
  Construction construction = Construction::Symmetric;
  std::int64_t median_ns = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t merge_scan_touches = 0;  // from the last repetition
};

/// Times compute_all_penalties on a random tree per size (deterministic per
/// seed and size) and reports the median of `reps` runs.  reps is clamped to
/// at least 3.
std::vector<BenchRecord> run_bench(std::span<const NodeId> sizes, int reps, std::uint64_t seed,
                                   std::span<const Construction> constructions);

/// CSV with the exact header "n,construction,median_ns,reps,seed".
std::string bench_csv(std::span<const BenchRecord> records);

}  // namespace covertree
