#include "covertree/generator.hpp"

#include <stdexcept>

namespace covertree {

const char* shape_name(TreeShape shape) {
  switch (shape) {
    case TreeShape::UniformRandom: return "uniform-random";
    case TreeShape::Path: return "path";
    case TreeShape::Caterpillar: return "caterpillar";
    case TreeShape::Star: return "star";
    case TreeShape::BalancedBinary: return "balanced-binary";
  }
  return "unknown";
}

bool shape_from_name(std::string_view name, TreeShape& out) {
  for (TreeShape s : {TreeShape::UniformRandom, TreeShape::Path, TreeShape::Caterpillar,
                      TreeShape::Star, TreeShape::BalancedBinary}) {
    if (name == shape_name(s)) {
      out = s;
      return true;
    }
  }
  return false;
}

Instance gen_random_tree(const GenConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.cost_max < cfg.cost_min ||
      cfg.pi_max < cfg.pi_min || cfg.rho_max < cfg.rho_min)
    throw std::invalid_argument("gen_random_tree: empty range");

  SplitMix64 rng(cfg.seed);
  NodeId n = static_cast<NodeId>(rng.next_in(cfg.n_min, cfg.n_max));

  Instance inst;
  inst.n = n;
  inst.pi.assign(static_cast<std::size_t>(n) + 1, 0);
  inst.rho.assign(static_cast<std::size_t>(n) + 1, 0);

  NodeId spine = std::max<NodeId>(1, n / 2);
  for (NodeId i = 2; i <= n; ++i) {
    NodeId parent = 1;
    switch (cfg.shape) {
      case TreeShape::UniformRandom:
        parent = static_cast<NodeId>(1 + rng.next_below(static_cast<std::uint64_t>(i) - 1));
        break;
      case TreeShape::Path:
        parent = i - 1;
        break;
      case TreeShape::Caterpillar:
        // First half forms the spine, the rest hang off random spine nodes.
        parent = i <= spine ? i - 1
                            : static_cast<NodeId>(1 + rng.next_below(
                                  static_cast<std::uint64_t>(spine)));
        break;
      case TreeShape::Star:
        parent = 1;
        break;
      case TreeShape::BalancedBinary:
        parent = i / 2;
        break;
    }
    inst.edges.push_back({parent, i, rng.next_in(cfg.cost_min, cfg.cost_max)});
  }
  for (NodeId v = 1; v <= n; ++v) {
    inst.pi[v] = rng.next_in(cfg.pi_min, cfg.pi_max);
    inst.rho[v] = rng.next_in(cfg.rho_min, cfg.rho_max);
  }
  validate_instance(inst);
  return inst;
}

}  // namespace covertree
