#include "covertree/covering_dp.hpp"

#include <algorithm>

#include "covertree/medianoid.hpp"

namespace covertree {

namespace {

// p' of a bitree mapped back to original node ids through the canonical copy.
std::vector<Value> map_back(const PenaltyVector& p, const NormalizedTree& norm, NodeId n) {
  std::vector<Value> out(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 1; v <= n; ++v) out[v] = p[norm.canonical(v)];
  return out;
}

bool covers(Value dist, Value rho, CoverageMode mode) {
  return mode == CoverageMode::Weak ? dist <= rho : dist < rho;
}

}  // namespace

PTriples compute_p_triples(const Instance& inst, NodeId root, CoverageMode mode) {
  NormalizedTree norm = normalize_degree(inst, root);

  PTriples out;
  out.p_all = map_back(compute_all_penalties(build_symmetric(norm), mode), norm, inst.n);
  out.p_subtree = map_back(compute_all_penalties(build_descendant(norm), mode), norm, inst.n);

  FatherSubdivided sub = build_father_subdivided(norm);
  PenaltyVector p_sub = compute_all_penalties(sub.bitree, mode);
  out.p_subtree_father.assign(static_cast<std::size_t>(inst.n) + 1, 0);
  for (NodeId v = 1; v <= inst.n; ++v) {
    NodeId copy = norm.canonical(v);
    // The root has no father edge; by the self-father convention its value
    // is p(T_s, s), which the descendant pass already provides.
    out.p_subtree_father[v] = v == root ? out.p_subtree[v] : p_sub[sub.fprime[copy]];
  }
  return out;
}

std::vector<Value> penalty_vector(const Instance& inst, CoverageMode mode) {
  NormalizedTree norm = normalize_degree(inst, 1);
  return map_back(compute_all_penalties(build_symmetric(norm), mode), norm, inst.n);
}

MaxCovResult solve_single_maxcov(const Instance& inst, CoverageMode mode) {
  std::vector<Value> p = penalty_vector(inst, mode);
  MaxCovResult best{1, p[1], 0};
  for (NodeId v = 2; v <= inst.n; ++v) {
    if (p[v] < best.penalty) best = {v, p[v], 0};
  }
  best.covered = inst.pi_sum() - best.penalty;
  return best;
}

SubtreeCost evaluate_subtree(const Instance& inst, std::span<const NodeId> nodes,
                             CoverageMode mode) {
  if (nodes.empty()) throw std::invalid_argument("evaluate_subtree: empty facility");
  std::vector<char> member(static_cast<std::size_t>(inst.n) + 1, 0);
  for (NodeId v : nodes) {
    if (!inst.has_node(v)) throw std::invalid_argument("evaluate_subtree: unknown node id");
    member[v] = 1;
  }
  SubtreeCost cost;
  std::size_t induced = 0;
  for (const auto& e : inst.edges) {
    if (member[e.a] && member[e.b]) {
      cost.setup += e.cost;
      ++induced;
    }
  }
  if (induced + 1 != nodes.size())
    throw std::invalid_argument("evaluate_subtree: node set is not a connected subtree");
  std::vector<Value> dist = distances_to_set(inst, nodes);
  for (NodeId u = 1; u <= inst.n; ++u)
    if (!covers(dist[u], inst.rho[u], mode)) cost.penalty += inst.pi[u];
  return cost;
}

SolveDetail solve_indirect_detail(const Instance& inst, CoverageMode mode) {
  SolveDetail detail;
  detail.root = 1;
  detail.triples = compute_p_triples(inst, detail.root, mode);

  RootedTree rt = root_tree(inst, detail.root);
  auto size = static_cast<std::size_t>(inst.n) + 1;
  detail.tables.c.assign(size, 0);
  detail.tables.c_plus.assign(size, 0);
  detail.tables.choice.assign(size, Choice::PaidPenalty);

  auto& c = detail.tables.c;
  auto& c_plus = detail.tables.c_plus;
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    NodeId v = *it;
    // A facility member covers itself at distance zero except under strict
    // coverage with radius zero, where it pays its own penalty.
    c[v] = mode == CoverageMode::Strict && inst.rho[v] == 0 ? inst.pi[v] : 0;
    for (NodeId u : rt.children[v]) c[v] += c_plus[u];
    if (v == detail.root) continue;
    // Either extend the facility through the father edge or pay the
    // penalties of the whole branch; ties exclude the edge for the smallest
    // witness.
    Value take = c[v] + rt.father_cost[v];
    Value pay = detail.triples.p_subtree_father[v];
    if (take < pay) {
      c_plus[v] = take;
      detail.tables.choice[v] = Choice::TookEdge;
    } else {
      c_plus[v] = pay;
      detail.tables.choice[v] = Choice::PaidPenalty;
    }
  }

  NodeId best = 1;
  Value best_cost = c[1] + detail.triples.p_all[1] - detail.triples.p_subtree[1];
  for (NodeId v = 2; v <= inst.n; ++v) {
    Value cost = c[v] + detail.triples.p_all[v] - detail.triples.p_subtree[v];
    if (cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }

  Solution& sol = detail.solution;
  sol.total = best_cost;
  std::vector<NodeId> stack{best};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    sol.nodes.push_back(v);
    for (NodeId u : rt.children[v]) {
      if (detail.tables.choice[u] == Choice::TookEdge) {
        sol.edges.push_back({v, u});
        stack.push_back(u);
      }
    }
  }
  std::sort(sol.nodes.begin(), sol.nodes.end());

  SubtreeCost check = evaluate_subtree(inst, sol.nodes, mode);
  if (check.total() != sol.total)
    throw std::logic_error("solve_indirect: witness re-evaluation does not match the DP optimum");
  sol.setup = check.setup;
  sol.penalty = check.penalty;
  return detail;
}

Solution solve_indirect(const Instance& inst, CoverageMode mode) {
  return solve_indirect_detail(inst, mode).solution;
}

Solution oracle_enumerate(const Instance& inst, CoverageMode mode) {
  if (inst.n > 14) throw std::invalid_argument("oracle_enumerate: n exceeds the cap of 14");
  NodeId n = inst.n;

  // Fresh all-pairs distances, independent of the engine path.
  std::vector<std::vector<Value>> dist;
  dist.reserve(n + 1);
  dist.emplace_back();
  for (NodeId v = 1; v <= n; ++v) dist.push_back(distances_from(inst, v));

  std::uint32_t full = 1u << n;
  Solution best;
  bool have = false;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    // Connectivity: grow from the lowest member over tree edges inside mask.
    std::uint32_t seen = mask & (~mask + 1);
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& e : inst.edges) {
        std::uint32_t ba = 1u << (e.a - 1), bb = 1u << (e.b - 1);
        if ((mask & ba) && (mask & bb)) {
          if ((seen & ba) && !(seen & bb)) seen |= bb, grew = true;
          if ((seen & bb) && !(seen & ba)) seen |= ba, grew = true;
        }
      }
    }
    if (seen != mask) continue;

    Value setup = 0;
    for (const auto& e : inst.edges)
      if ((mask >> (e.a - 1) & 1) && (mask >> (e.b - 1) & 1)) setup += e.cost;
    Value penalty = 0;
    for (NodeId u = 1; u <= n; ++u) {
      Value nearest = -1;
      for (NodeId y = 1; y <= n; ++y)
        if (mask >> (y - 1) & 1)
          if (nearest < 0 || dist[u][y] < nearest) nearest = dist[u][y];
      if (!covers(nearest, inst.rho[u], mode)) penalty += inst.pi[u];
    }
    if (!have || setup + penalty < best.total) {
      have = true;
      best.total = setup + penalty;
      best.setup = setup;
      best.penalty = penalty;
      best.nodes.clear();
      best.edges.clear();
      for (NodeId v = 1; v <= n; ++v)
        if (mask >> (v - 1) & 1) best.nodes.push_back(v);
      for (const auto& e : inst.edges)
        if ((mask >> (e.a - 1) & 1) && (mask >> (e.b - 1) & 1)) best.edges.push_back({e.a, e.b});
    }
  }
  return best;
}

Solution solve_direct(const Instance& inst) {
  for (const auto& e : inst.edges)
    if (e.cost == 0)
      throw std::invalid_argument("solve_direct: zero-cost edges make membership and "
                                  "distance-zero coverage differ");
  Instance zeroed = inst;
  std::fill(zeroed.rho.begin(), zeroed.rho.end(), 0);
  validate_instance(zeroed);
  return solve_indirect(zeroed, CoverageMode::Weak);
}

}  // namespace covertree
