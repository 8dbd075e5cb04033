#include "covertree/medianoid.hpp"

#include <algorithm>
#include <limits>

namespace covertree {

std::vector<Value> distances_to_set(const Instance& inst, std::span<const NodeId> x) {
  if (x.empty()) throw std::invalid_argument("distances_to_set: empty node set");
  std::vector<char> source(static_cast<std::size_t>(inst.n) + 1, 0);
  for (NodeId v : x) {
    if (!inst.has_node(v)) throw std::invalid_argument("distances_to_set: unknown node id");
    source[v] = 1;
  }

  RootedTree rt = root_tree(inst, 1);
  constexpr Value kUnreached = std::numeric_limits<Value>::max() / 4;
  std::vector<Value> best(static_cast<std::size_t>(inst.n) + 1, kUnreached);

  // Upward pass: nearest source within the subtree.
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    NodeId v = *it;
    if (source[v]) best[v] = 0;
    for (NodeId u : rt.children[v]) best[v] = std::min(best[v], best[u] + rt.father_cost[u]);
  }
  // Downward pass: relaxing through the father is exact for nonnegative
  // costs (a detour through the child's own subtree is never shorter).
  for (NodeId v : rt.order) {
    if (v == rt.root) continue;
    best[v] = std::min(best[v], best[rt.father[v]] + rt.father_cost[v]);
  }
  best[0] = 0;
  return best;
}

MedianoidResult solve_medianoid(const MedianoidInstance& mi) {
  if (mi.x.empty()) throw std::invalid_argument("solve_medianoid: X must be nonempty");
  const Instance& tree = mi.tree;

  // rho(u) = d(u, X) with strict coverage realizes the "just closer than X"
  // rule exactly on integer data; weights ride in the pi column.
  Instance reduced = tree;
  std::vector<Value> dx = distances_to_set(tree, mi.x);
  for (NodeId v = 1; v <= tree.n; ++v) reduced.rho[v] = dx[v];
  validate_instance(reduced);

  std::vector<Value> p = penalty_vector(reduced, CoverageMode::Strict);
  Value total = tree.pi_sum();

  MedianoidResult out;
  out.captured_by_node.assign(static_cast<std::size_t>(tree.n) + 1, 0);
  for (NodeId v = 1; v <= tree.n; ++v) out.captured_by_node[v] = total - p[v];
  out.node = 1;
  for (NodeId v = 2; v <= tree.n; ++v)
    if (out.captured_by_node[v] > out.captured_by_node[out.node]) out.node = v;
  out.captured = out.captured_by_node[out.node];
  return out;
}

MedianoidResult naive_medianoid(const MedianoidInstance& mi, NodeId max_n) {
  if (mi.x.empty()) throw std::invalid_argument("naive_medianoid: X must be nonempty");
  const Instance& tree = mi.tree;
  if (tree.n > max_n) throw std::invalid_argument("naive_medianoid: size cap exceeded");

  std::vector<Value> dx(static_cast<std::size_t>(tree.n) + 1,
                        std::numeric_limits<Value>::max());
  for (NodeId xv : mi.x) {
    if (!tree.has_node(xv)) throw std::invalid_argument("naive_medianoid: unknown node id");
    std::vector<Value> d = distances_from(tree, xv);
    for (NodeId u = 1; u <= tree.n; ++u) dx[u] = std::min(dx[u], d[u]);
  }

  MedianoidResult out;
  out.captured_by_node.assign(static_cast<std::size_t>(tree.n) + 1, 0);
  for (NodeId y = 1; y <= tree.n; ++y) {
    std::vector<Value> dy = distances_from(tree, y);
    Value captured = 0;
    for (NodeId u = 1; u <= tree.n; ++u)
      if (dy[u] < dx[u]) captured += tree.pi[u];
    out.captured_by_node[y] = captured;
  }
  out.node = 1;
  for (NodeId y = 2; y <= tree.n; ++y)
    if (out.captured_by_node[y] > out.captured_by_node[out.node]) out.node = y;
  out.captured = out.captured_by_node[out.node];
  return out;
}

}  // namespace covertree
