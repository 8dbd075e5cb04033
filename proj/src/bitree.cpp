#include "covertree/bitree.hpp"

namespace covertree {

void Bitree::add_edge(NodeId a, NodeId b, ExtScalar cost_ab, ExtScalar cost_ba) {
  if (cost_ab.is_pos_inf() || cost_ba.is_pos_inf())
    throw std::logic_error("Bitree: +inf is not a valid arc cost");
  adj[a].push_back({b, cost_ab, cost_ba});
  adj[b].push_back({a, cost_ba, cost_ab});
}

namespace {

Bitree empty_bitree(const Instance& tree) {
  Bitree b;
  b.n = tree.n;
  b.adj.assign(static_cast<std::size_t>(tree.n) + 1, {});
  b.pi = tree.pi;
  b.rho = tree.rho;
  return b;
}

}  // namespace

Bitree build_symmetric(const NormalizedTree& t) {
  Bitree b = empty_bitree(t.tree);
  for (const auto& e : t.tree.edges)
    b.add_edge(e.a, e.b, ExtScalar::finite(e.cost), ExtScalar::finite(e.cost));
  return b;
}

Bitree build_descendant(const NormalizedTree& t) {
  Bitree b = empty_bitree(t.tree);
  RootedTree rt = root_tree(t.tree, t.root);
  for (NodeId v = 1; v <= t.tree.n; ++v) {
    if (v == rt.root) continue;
    // Upward arc keeps the cost; the downward arc makes every non-descendant
    // source reach v at distance -inf, i.e. always covering.
    b.add_edge(v, rt.father[v], ExtScalar::finite(rt.father_cost[v]), ExtScalar::neg_inf());
  }
  return b;
}

FatherSubdivided build_father_subdivided(const NormalizedTree& t) {
  const Instance& tree = t.tree;
  RootedTree rt = root_tree(tree, t.root);

  FatherSubdivided out;
  Bitree& b = out.bitree;
  NodeId enlarged = tree.n == 1 ? 1 : 2 * tree.n - 1;
  b.n = enlarged;
  b.adj.assign(static_cast<std::size_t>(enlarged) + 1, {});
  b.pi.assign(static_cast<std::size_t>(enlarged) + 1, 0);
  b.rho.assign(static_cast<std::size_t>(enlarged) + 1, 0);
  for (NodeId v = 1; v <= tree.n; ++v) {
    b.pi[v] = tree.pi[v];
    b.rho[v] = tree.rho[v];
  }

  out.fprime.assign(static_cast<std::size_t>(tree.n) + 1, 0);
  NodeId next = tree.n;
  for (NodeId v = 1; v <= tree.n; ++v) {
    if (v == rt.root) continue;
    NodeId mid = ++next;
    out.fprime[v] = mid;
    // (v, f'(v)) keeps the original length, (f'(v), f(v)) is free; both are
    // oriented upward with -inf downward arcs as in build_descendant.
    b.add_edge(v, mid, ExtScalar::finite(rt.father_cost[v]), ExtScalar::neg_inf());
    b.add_edge(mid, rt.father[v], ExtScalar::finite(0), ExtScalar::neg_inf());
  }
  return out;
}

}  // namespace covertree
