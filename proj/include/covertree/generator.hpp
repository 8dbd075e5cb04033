#pragma once

#include "covertree/instance.hpp"

namespace covertree {

/// SplitMix64 with the standard constants.  The recurrence is part of the
/// external contract so reported failure seeds reproduce across
/// implementations; range reduction is plain modulo.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  /// Uniform in [lo, hi] inclusive.
  Value next_in(Value lo, Value hi) {
    return lo + static_cast<Value>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

enum class TreeShape { UniformRandom, Path, Caterpillar, Star, BalancedBinary };

struct GenConfig {
  std::uint64_t seed = 1;
  NodeId n_min = 1;
  NodeId n_max = 50;
  Value cost_min = 0, cost_max = 20;
  Value pi_min = 0, pi_max = 10;
  Value rho_min = 0, rho_max = 40;
  TreeShape shape = TreeShape::UniformRandom;
};

/// Deterministic per seed.  Uniform-random shape attaches node i (i >= 2) to
/// a uniformly chosen node in 1..i-1.
Instance gen_random_tree(const GenConfig& cfg);

const char* shape_name(TreeShape shape);
bool shape_from_name(std::string_view name, TreeShape& out);

}  // namespace covertree
