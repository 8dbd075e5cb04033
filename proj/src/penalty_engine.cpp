#include "covertree/penalty_engine.hpp"

#include <algorithm>
#include <cassert>

namespace covertree {

namespace {

inline bool uncovered(ExtScalar dist, Value rho, CoverageMode mode) {
  ExtScalar r = ExtScalar::finite(rho);
  return mode == CoverageMode::Weak ? dist > r : dist >= r;
}

}  // namespace

namespace engine {

void TtsbGraph::add_local_edge(std::int32_t a, std::int32_t b, ExtScalar cost_ab,
                               ExtScalar cost_ba) {
  arcs[a][degree[a]++] = {b, cost_ab, cost_ba};
  arcs[b][degree[b]++] = {a, cost_ba, cost_ab};
}

namespace {

struct DfsInfo {
  std::vector<std::int32_t> parent;  // parent[root] == root
  std::vector<std::int32_t> order;   // preorder sequence of local indices
  std::vector<std::int32_t> size;    // subtree sizes w.r.t. the DFS root
};

DfsInfo dfs_from(const TtsbGraph& g, std::int32_t root) {
  auto n = static_cast<std::int32_t>(g.size());
  DfsInfo info;
  info.parent.assign(n, -1);
  info.order.reserve(n);
  info.parent[root] = root;
  std::vector<std::int32_t> stack{root};
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    info.order.push_back(v);
    for (int k = g.degree[v] - 1; k >= 0; --k) {
      std::int32_t u = g.arcs[v][k].to;
      if (info.parent[u] == -1) {
        info.parent[u] = v;
        stack.push_back(u);
      }
    }
  }
  info.size.assign(n, 1);
  for (auto i = n - 1; i >= 1; --i) info.size[info.parent[info.order[i]]] += info.size[info.order[i]];
  return info;
}

std::int32_t median_from(const TtsbGraph& g, const DfsInfo& info) {
  auto n = static_cast<std::int32_t>(g.size());
  for (std::int32_t v : info.order) {
    std::int32_t worst = n - info.size[v];
    for (int k = 0; k < g.degree[v]; ++k) {
      std::int32_t u = g.arcs[v][k].to;
      if (info.parent[u] == v && u != v) worst = std::max(worst, info.size[u]);
    }
    if (worst <= n / 2) return v;
  }
  throw std::logic_error("median_from: no median found");
}

}  // namespace

std::int32_t find_unweighted_median(const TtsbGraph& g) {
  if (g.size() == 1) return 0;
  return median_from(g, dfs_from(g, g.s));
}

Subdivision subdivide_ttsb(const TtsbGraph& g) {
  auto n = static_cast<std::int32_t>(g.size());
  assert(n >= 3);
  DfsInfo info = dfs_from(g, g.s);
  std::int32_t m = median_from(g, info);

  std::vector<char> on_path(n, 0);
  for (std::int32_t x = g.t;; x = info.parent[x]) {
    on_path[x] = 1;
    if (x == g.s) break;
  }
  assert(m != g.s && m != g.t);

  Subdivision sub;
  sub.median = g.nodes[m];
  std::int32_t mp = -1;          // m' when m is off the terminal path
  std::int32_t walk_first = -1;  // first node on the m -> m' walk after m
  if (!on_path[m]) {
    sub.off_path = true;
    walk_first = info.parent[m];
    std::int32_t x = walk_first;
    while (!on_path[x]) x = info.parent[x];
    mp = x;
    if (walk_first == mp) walk_first = -1;  // m adjacent to m'
    assert(mp != g.s && mp != g.t);         // terminals are leaves, m' never is
    sub.median_anchor = g.nodes[mp];
  }

  // Components of S minus the cut node(s).
  std::vector<std::int32_t> comp_id(n, -1);
  std::vector<std::vector<std::int32_t>> comps;
  auto removed = [&](std::int32_t x) { return x == m || x == mp; };
  for (std::int32_t seed = 0; seed < n; ++seed) {
    if (removed(seed) || comp_id[seed] != -1) continue;
    auto id = static_cast<std::int32_t>(comps.size());
    comps.emplace_back();
    std::vector<std::int32_t> stack{seed};
    comp_id[seed] = id;
    while (!stack.empty()) {
      std::int32_t v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (int k = 0; k < g.degree[v]; ++k) {
        std::int32_t u = g.arcs[v][k].to;
        if (!removed(u) && comp_id[u] == -1) {
          comp_id[u] = id;
          stack.push_back(u);
        }
      }
    }
  }

  std::vector<std::int32_t> local_of(n, -1);
  auto build_child = [&](const std::vector<std::int32_t>& members, std::int32_t term_s,
                         std::int32_t term_t, bool s_ghost, bool t_ghost) {
    TtsbGraph child;
    auto sz = members.size();
    child.nodes.reserve(sz);
    child.eff_pi.reserve(sz);
    child.arcs.assign(sz, {});
    child.degree.assign(sz, 0);
    for (std::size_t i = 0; i < sz; ++i) {
      std::int32_t x = members[i];
      local_of[x] = static_cast<std::int32_t>(i);
      child.nodes.push_back(g.nodes[x]);
      child.eff_pi.push_back(g.eff_pi[x]);
    }
    for (std::size_t i = 0; i < sz; ++i) {
      std::int32_t x = members[i];
      for (int k = 0; k < g.degree[x]; ++k) {
        const auto& arc = g.arcs[x][k];
        if (arc.to > x && local_of[arc.to] != -1)
          child.add_local_edge(local_of[x], local_of[arc.to], arc.out, arc.in);
      }
    }
    child.s = local_of[term_s];
    child.t = local_of[term_t];
    child.s_ghost = s_ghost;
    child.t_ghost = t_ghost;
    if (s_ghost) child.eff_pi[child.s] = 0;
    if (t_ghost) child.eff_pi[child.t] = 0;
    for (std::int32_t x : members) local_of[x] = -1;
    assert(child.degree[child.s] == 1 && child.degree[child.t] == 1);
    return child;
  };

  std::int32_t cut = sub.off_path ? mp : m;  // shared node between the two side children

  auto members_plus = [&](std::int32_t comp, std::initializer_list<std::int32_t> cuts) {
    std::vector<std::int32_t> members;
    if (comp >= 0) members = comps[comp];
    members.insert(members.end(), cuts.begin(), cuts.end());
    return members;
  };

  // Side children first: the s side owns the shared cut node, everyone later
  // holds a ghost copy of it.
  sub.children.push_back(build_child(members_plus(comp_id[g.s], {cut}), g.s, cut, false, false));
  sub.kinds.push_back(ChildKind::SideS);
  sub.children.push_back(build_child(members_plus(comp_id[g.t], {cut}), cut, g.t, true, false));
  sub.kinds.push_back(ChildKind::SideT);
  if (sub.off_path) {
    std::int32_t walk_comp = walk_first == -1 ? -1 : comp_id[walk_first];
    std::vector<std::int32_t> members = walk_comp >= 0 ? comps[walk_comp] : std::vector<std::int32_t>{};
    members.push_back(mp);
    members.push_back(m);
    sub.children.push_back(build_child(members, mp, m, true, false));
    sub.kinds.push_back(ChildKind::Chain);
  }

  // Components hanging at m (with m a ghost: the chain child or, on-path, the
  // s side already owns it).  Second terminal: first leaf of the component on
  // a DFS from the attachment edge; the attachment node itself counts as a
  // leaf when its only other neighbor is m.
  for (int k = 0; k < g.degree[m]; ++k) {
    std::int32_t seed = g.arcs[m][k].to;
    if (removed(seed)) continue;
    std::int32_t comp = comp_id[seed];
    if (comp == comp_id[g.s] || comp == comp_id[g.t]) continue;
    if (walk_first != -1 && comp == comp_id[walk_first]) continue;
    std::int32_t leaf = -1;
    std::vector<char> seen(n, 0);
    std::vector<std::int32_t> stack{seed};
    seen[seed] = 1;
    while (!stack.empty()) {
      std::int32_t v = stack.back();
      stack.pop_back();
      int deg_in_child = 0;
      for (int kk = 0; kk < g.degree[v]; ++kk) {
        std::int32_t u = g.arcs[v][kk].to;
        if (u == m || comp_id[u] == comp) ++deg_in_child;
      }
      if (deg_in_child == 1) {
        leaf = v;
        break;
      }
      for (int kk = g.degree[v] - 1; kk >= 0; --kk) {
        std::int32_t u = g.arcs[v][kk].to;
        if (u != m && comp_id[u] == comp && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    assert(leaf != -1);
    sub.children.push_back(build_child(members_plus(comp, {m}), m, leaf, true, false));
    sub.kinds.push_back(ChildKind::Pendant);
  }

  assert(sub.children.size() >= 2 && sub.children.size() <= 5);
  return sub;
}

KeyedList offset_list(const KeyedList& list, ExtScalar shift) {
  KeyedList out;
  out.reserve(list.size());
  for (const auto& e : list) out.push_back({e.key + shift, e.node, e.pi});
  return out;
}

std::vector<Value> merge_scan_cross(const KeyedList& sources, const KeyedList& targets,
                                    CoverageMode mode, std::span<const NodeId> skip_targets) {
  std::vector<Value> increments(targets.size(), 0);
  std::size_t si = 0;
  Value prefix = 0;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const auto& tgt = targets[ti];
    // Weak coverage breaks key ties in favor of targets (equal keys mean
    // d(u,v) == rho(u), which covers); strict coverage favors sources.
    while (si < sources.size() && (mode == CoverageMode::Weak ? sources[si].key < tgt.key
                                                              : sources[si].key <= tgt.key)) {
      prefix += sources[si].pi;
      ++si;
    }
    bool skip = false;
    for (NodeId sk : skip_targets) skip = skip || sk == tgt.node;
    if (!skip) increments[ti] = prefix;
  }
  return increments;
}

namespace {

// Stable two-way merge; ties keep entries of the earlier list first.
KeyedList merge_lists(KeyedList a, KeyedList b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  KeyedList out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (b[j].key < a[i].key)
      out.push_back(b[j++]);
    else
      out.push_back(a[i++]);
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

KeyedList offset_drop_ghosts(const KeyedList& list, ExtScalar shift, const TtsbResult& child) {
  KeyedList out;
  out.reserve(list.size());
  for (const auto& e : list) {
    if ((child.s_ghost && e.node == child.s_global) || (child.t_ghost && e.node == child.t_global))
      continue;
    out.push_back({e.key + shift, e.node, e.pi});
  }
  return out;
}

struct CrossGeometry {
  const KeyedList* source = nullptr;  // rho list at the source-side facing terminal
  const KeyedList* target = nullptr;  // d list at the target-side facing terminal
  ExtScalar between;                  // d(source terminal, target terminal)
};

// Terminal of `child` through which paths toward `other` leave it.  With the
// child orientation used by subdivide_ttsb this is the child's own t for the
// s side, and s otherwise -- except the chain child, which faces pendants
// through its t.
bool faces_via_t(ChildKind child, ChildKind other) {
  if (child == ChildKind::SideS) return true;
  if (child == ChildKind::Chain && other == ChildKind::Pendant) return true;
  return false;
}

CrossGeometry cross_geometry(const Subdivision& sub, std::span<const TtsbResult> results,
                             std::size_t j, std::size_t i) {
  bool src_t = faces_via_t(sub.kinds[j], sub.kinds[i]);
  bool tgt_t = faces_via_t(sub.kinds[i], sub.kinds[j]);
  CrossGeometry geo;
  geo.source = src_t ? &results[j].rho_t : &results[j].rho_s;
  geo.target = tgt_t ? &results[i].d_t : &results[i].d_s;

  geo.between = ExtScalar::finite(0);
  if (sub.off_path) {
    NodeId src_term = src_t ? results[j].t_global : results[j].s_global;
    NodeId tgt_term = tgt_t ? results[i].t_global : results[i].s_global;
    if (src_term != tgt_term) {
      const TtsbResult* chain = nullptr;
      for (std::size_t c = 0; c < sub.kinds.size(); ++c)
        if (sub.kinds[c] == ChildKind::Chain) chain = &results[c];
      assert(chain != nullptr);
      geo.between = src_term == sub.median_anchor ? chain->d_st : chain->d_ts;
    }
  }
  return geo;
}

// Nodes present in both children: at most the shared cut node of the pair.
std::vector<NodeId> shared_nodes(const Subdivision& sub, std::size_t j, std::size_t i) {
  auto holds = [&](std::size_t c, NodeId node) {
    ChildKind k = sub.kinds[c];
    if (node == sub.median)
      return !sub.off_path || k == ChildKind::Chain || k == ChildKind::Pendant;
    if (node == sub.median_anchor && sub.off_path)
      return k == ChildKind::SideS || k == ChildKind::SideT || k == ChildKind::Chain;
    return false;
  };
  std::vector<NodeId> out;
  if (holds(j, sub.median) && holds(i, sub.median)) out.push_back(sub.median);
  if (sub.off_path && holds(j, sub.median_anchor) && holds(i, sub.median_anchor))
    out.push_back(sub.median_anchor);
  return out;
}

const TtsbResult& by_kind(const Subdivision& sub, std::span<const TtsbResult> results,
                          ChildKind kind) {
  for (std::size_t c = 0; c < sub.kinds.size(); ++c)
    if (sub.kinds[c] == kind) return results[c];
  throw std::logic_error("by_kind: missing child");
}

}  // namespace

TtsbResult list_propagate(const TtsbGraph& parent, const Subdivision& sub,
                          std::span<const TtsbResult> child_results) {
  const TtsbResult& side_s = by_kind(sub, child_results, ChildKind::SideS);
  const TtsbResult& side_t = by_kind(sub, child_results, ChildKind::SideT);
  const TtsbResult* chain = sub.off_path ? &by_kind(sub, child_results, ChildKind::Chain) : nullptr;

  TtsbResult out;
  out.s_global = parent.nodes[parent.s];
  out.t_global = parent.nodes[parent.t];
  out.s_ghost = parent.s_ghost;
  out.t_ghost = parent.t_ghost;
  out.d_st = side_s.d_st + side_t.d_st;
  out.d_ts = side_t.d_ts + side_s.d_ts;

  ExtScalar zero = ExtScalar::finite(0);
  for (std::size_t c = 0; c < child_results.size(); ++c) {
    const TtsbResult& r = child_results[c];
    ChildKind kind = sub.kinds[c];

    // Every child faces the parent's s through its own s terminal; the
    // distances from s (resp. to s) compose through the side-s child and,
    // for pendants hanging behind the median, also through the chain child.
    ExtScalar from_s, to_s, from_t, to_t;
    switch (kind) {
      case ChildKind::SideS:
        from_s = to_s = zero;
        from_t = side_t.d_ts;
        to_t = side_t.d_st;
        break;
      case ChildKind::SideT:
        from_t = to_t = zero;
        from_s = side_s.d_st;
        to_s = side_s.d_ts;
        break;
      case ChildKind::Chain:
        from_s = side_s.d_st;
        to_s = side_s.d_ts;
        from_t = side_t.d_ts;
        to_t = side_t.d_st;
        break;
      case ChildKind::Pendant:
      default:
        from_s = sub.off_path ? side_s.d_st + chain->d_st : side_s.d_st;
        to_s = sub.off_path ? chain->d_ts + side_s.d_ts : side_s.d_ts;
        from_t = sub.off_path ? side_t.d_ts + chain->d_st : side_t.d_ts;
        to_t = sub.off_path ? chain->d_ts + side_t.d_st : side_t.d_st;
        break;
    }

    // The list facing the parent's t end: the side-t child faces it through
    // its own t terminal, everyone else through s-oriented lists.
    bool t_via_t = kind == ChildKind::SideT || kind == ChildKind::SideS;
    const KeyedList& d_toward_t = t_via_t ? r.d_t : r.d_s;
    const KeyedList& rho_toward_t = t_via_t ? r.rho_t : r.rho_s;

    out.d_s = merge_lists(std::move(out.d_s), offset_drop_ghosts(r.d_s, from_s, r));
    out.rho_s = merge_lists(std::move(out.rho_s), offset_drop_ghosts(r.rho_s, -to_s, r));
    out.d_t = merge_lists(std::move(out.d_t), offset_drop_ghosts(d_toward_t, from_t, r));
    out.rho_t = merge_lists(std::move(out.rho_t), offset_drop_ghosts(rho_toward_t, -to_t, r));
  }

  assert(out.d_s.size() == parent.size());
  assert(out.d_t.size() == parent.size());
  return out;
}

TtsbGraph make_root_graph(const Bitree& b) {
  TtsbGraph g;
  auto n = static_cast<std::size_t>(b.n);
  g.nodes.resize(n);
  g.eff_pi.resize(n);
  g.arcs.assign(n, {});
  g.degree.assign(n, 0);
  for (NodeId v = 1; v <= b.n; ++v) {
    g.nodes[v - 1] = v;
    g.eff_pi[v - 1] = b.pi[v];
  }
  for (NodeId v = 1; v <= b.n; ++v)
    for (const auto& arc : b.adj[v])
      if (arc.to > v) g.add_local_edge(v - 1, arc.to - 1, arc.out, arc.in);

  std::int32_t first_leaf = -1, second_leaf = -1;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(n); ++i) {
    if (g.degree[i] != 1) continue;
    if (first_leaf == -1)
      first_leaf = i;
    else if (second_leaf == -1) {
      second_leaf = i;
      break;
    }
  }
  if (second_leaf == -1) throw std::logic_error("make_root_graph: a tree with n >= 2 has two leaves");
  g.s = first_leaf;
  g.t = second_leaf;
  return g;
}

namespace {

TtsbResult base_case(EngineContext& ctx, const TtsbGraph& g) {
  if (ctx.stats) ++ctx.stats->base_cases;
  const Bitree& b = *ctx.bitree;
  std::int32_t s = g.s, t = g.t;
  const auto& arc = g.arcs[s][0];
  assert(arc.to == t);

  TtsbResult r;
  r.s_global = g.nodes[s];
  r.t_global = g.nodes[t];
  r.s_ghost = g.s_ghost;
  r.t_ghost = g.t_ghost;
  r.d_st = arc.out;
  r.d_ts = arc.in;

  // The mutual contributions of the pair; within-child pairs accumulate here
  // regardless of ghost flags (the flags only guard this level's siblings).
  if (uncovered(r.d_st, b.rho[r.s_global], ctx.mode)) (*ctx.acc)[r.t_global] += g.eff_pi[s];
  if (uncovered(r.d_ts, b.rho[r.t_global], ctx.mode)) (*ctx.acc)[r.s_global] += g.eff_pi[t];

  ExtScalar zero = ExtScalar::finite(0);
  auto sorted_pair = [](KeyEntry first, KeyEntry second) {
    KeyedList list{first, second};
    if (list[1].key < list[0].key) std::swap(list[0], list[1]);
    return list;
  };
  r.d_s = sorted_pair({zero, r.s_global, g.eff_pi[s]}, {r.d_st, r.t_global, g.eff_pi[t]});
  r.d_t = sorted_pair({zero, r.t_global, g.eff_pi[t]}, {r.d_ts, r.s_global, g.eff_pi[s]});
  r.rho_s = sorted_pair({ExtScalar::finite(b.rho[r.s_global]), r.s_global, g.eff_pi[s]},
                        {ExtScalar::finite(b.rho[r.t_global]) - r.d_ts, r.t_global, g.eff_pi[t]});
  r.rho_t = sorted_pair({ExtScalar::finite(b.rho[r.t_global]), r.t_global, g.eff_pi[t]},
                        {ExtScalar::finite(b.rho[r.s_global]) - r.d_st, r.s_global, g.eff_pi[s]});
  return r;
}

void cross_merges(EngineContext& ctx, const Subdivision& sub,
                  std::span<const TtsbResult> results) {
  for (std::size_t j = 0; j < results.size(); ++j) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (i == j) continue;
      CrossGeometry geo = cross_geometry(sub, results, j, i);
      KeyedList shifted = offset_list(*geo.source, -geo.between);
      std::vector<NodeId> skip = shared_nodes(sub, j, i);
      std::vector<Value> incs = merge_scan_cross(shifted, *geo.target, ctx.mode, skip);
      if (ctx.stats) ctx.stats->merge_scan_touches += shifted.size() + geo.target->size();

      const TtsbResult& tgt_child = results[i];
      for (std::size_t e = 0; e < geo.target->size(); ++e) {
        if (incs[e] == 0) continue;
        NodeId node = (*geo.target)[e].node;
        // Ghost copies never accumulate at the level that ghosted them; the
        // owning sibling's entry receives these increments instead.
        if ((tgt_child.s_ghost && node == tgt_child.s_global) ||
            (tgt_child.t_ghost && node == tgt_child.t_global))
          continue;
        (*ctx.acc)[node] += incs[e];
      }
    }
  }
}

}  // namespace

TtsbResult solve_ttsb(EngineContext& ctx, TtsbGraph g) {
  if (ctx.stats) ctx.stats->max_depth = std::max(ctx.stats->max_depth, ctx.depth);
  assert(g.size() >= 2);
  if (g.size() == 2) return base_case(ctx, g);

  Subdivision sub = subdivide_ttsb(g);
  if (ctx.stats) ++ctx.stats->subdivisions;
  if (ctx.observer) ctx.observer->on_subdivision(g, sub);

  std::vector<TtsbResult> results;
  results.reserve(sub.children.size());
  ++ctx.depth;
  for (auto& child : sub.children) results.push_back(solve_ttsb(ctx, std::move(child)));
  --ctx.depth;

  cross_merges(ctx, sub, results);
  return list_propagate(g, sub, results);
}

}  // namespace engine

PenaltyVector compute_all_penalties(const Bitree& b, CoverageMode mode,
                                    engine::EngineStats* stats,
                                    engine::SubdivisionObserver* observer) {
  if (b.n < 1) throw std::invalid_argument("compute_all_penalties: empty bitree");
  for (NodeId v = 1; v <= b.n; ++v)
    if (b.degree(v) > 3) throw std::invalid_argument("compute_all_penalties: degree > 3");

  PenaltyVector acc(static_cast<std::size_t>(b.n) + 1, 0);
  // Self pairs: d(v,v) = 0, so only strict mode with radius zero penalizes.
  if (mode == CoverageMode::Strict)
    for (NodeId v = 1; v <= b.n; ++v)
      if (b.rho[v] == 0) acc[v] += b.pi[v];
  if (b.n == 1) return acc;

  engine::EngineContext ctx;
  ctx.bitree = &b;
  ctx.mode = mode;
  ctx.acc = &acc;
  ctx.stats = stats;
  ctx.observer = observer;
  engine::solve_ttsb(ctx, engine::make_root_graph(b));
  return acc;
}

PenaltyVector naive_penalties(const Bitree& b, CoverageMode mode, NodeId max_n) {
  if (b.n > max_n) throw std::invalid_argument("naive_penalties: size cap exceeded");
  PenaltyVector acc(static_cast<std::size_t>(b.n) + 1, 0);
  std::vector<char> seen(static_cast<std::size_t>(b.n) + 1, 0);
  std::vector<std::pair<NodeId, ExtScalar>> stack;
  for (NodeId u = 1; u <= b.n; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    stack.push_back({u, ExtScalar::finite(0)});
    seen[u] = 1;
    while (!stack.empty()) {
      auto [v, dist] = stack.back();
      stack.pop_back();
      if (uncovered(dist, b.rho[u], mode)) acc[v] += b.pi[u];
      for (const auto& arc : b.adj[v]) {
        if (!seen[arc.to]) {
          seen[arc.to] = 1;
          stack.push_back({arc.to, dist + arc.out});
        }
      }
    }
  }
  return acc;
}

}  // namespace covertree
