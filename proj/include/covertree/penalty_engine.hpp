#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "covertree/bitree.hpp"

namespace covertree {

/// Weak: source u imposes pi(u) on target v iff d(u,v) > rho(u).
/// Strict: iff d(u,v) >= rho(u).  Strict realizes an exact "- epsilon" on
/// integer data and is what the medianoid reduction uses.
enum class CoverageMode { Weak, Strict };

/// p'(v) per node, index 0 unused.
using PenaltyVector = std::vector<Value>;

/// Entry of a sorted key list.  `pi` is the node's effective penalty within
/// the owning sub-bitree (zero for ghost copies).
struct KeyEntry {
  ExtScalar key;
  NodeId node = 0;
  Value pi = 0;
};
using KeyedList = std::vector<KeyEntry>;

namespace engine {

/// A sub-bitree in which the two designated terminal nodes s and t are
/// leaves.  Nodes are stored with local indices; `nodes` maps back to the
/// bitree's ids.  A terminal flagged ghost is a duplicated cut node: its
/// effective penalty is zero here and its output entries are dropped at this
/// level in favor of the sibling that owns the node.
struct TtsbGraph {
  struct LocalArc {
    std::int32_t to = -1;
    ExtScalar out;  // cost local -> to
    ExtScalar in;   // cost to -> local
  };

  std::vector<NodeId> nodes;                    // local index -> global id
  std::vector<std::array<LocalArc, 3>> arcs;    // up to 3 per node
  std::vector<std::int8_t> degree;
  std::vector<Value> eff_pi;                    // effective penalty per local node
  std::int32_t s = 0, t = 0;                    // local terminal indices
  bool s_ghost = false;
  bool t_ghost = false;

  std::size_t size() const { return nodes.size(); }
  void add_local_edge(std::int32_t a, std::int32_t b, ExtScalar cost_ab, ExtScalar cost_ba);
};

/// Lists, terminal distances and flags propagated from a solved sub-bitree
/// to its parent.
struct TtsbResult {
  KeyedList d_s, d_t;      // nodes keyed by d(s, v) resp. d(t, v)
  KeyedList rho_s, rho_t;  // nodes keyed by rho(v) - d(v, s) resp. - d(v, t)
  ExtScalar d_st, d_ts;    // directed terminal-to-terminal distances
  NodeId s_global = 0, t_global = 0;
  bool s_ghost = false;
  bool t_ghost = false;
};

enum class ChildKind : std::uint8_t { SideS, SideT, Chain, Pendant };

struct Subdivision {
  std::vector<TtsbGraph> children;  // creation order: SideS, SideT, [Chain], pendants
  std::vector<ChildKind> kinds;
  NodeId median = 0;                // global id of the cut median m
  NodeId median_anchor = 0;         // global id of m' when m is off the terminal path, else 0
  bool off_path = false;
};

/// Hook for structural tests: called once per subdivision with the parent
/// and its children before recursing.
struct SubdivisionObserver {
  virtual ~SubdivisionObserver() = default;
  virtual void on_subdivision(const TtsbGraph& parent, const Subdivision& sub) = 0;
};

struct EngineStats {
  std::uint64_t merge_scan_touches = 0;  // elements consumed by cross merge-scans
  std::uint64_t subdivisions = 0;
  std::uint64_t base_cases = 0;
  int max_depth = 0;
};

/// Node whose removal leaves components of at most floor(|S|/2) nodes.
/// Ties are broken towards the smallest preorder index (DFS from s).
std::int32_t find_unweighted_median(const TtsbGraph& g);

/// Splits a TTSB of size >= 3 into 2..5 edge-disjoint child TTSBs of size
/// <= floor(|S|/2) + 1.  Cut nodes become shared terminals; the first child
/// containing a shared node owns it, later ones hold a ghost copy.
Subdivision subdivide_ttsb(const TtsbGraph& g);

/// Returns a copy of `list` with `shift` added to every key (order-preserving).
KeyedList offset_list(const KeyedList& list, ExtScalar shift);

/// For each target, the sum of source penalties whose key precedes the
/// target's (Weak: strictly, ties favor targets; Strict: ties favor sources).
/// Targets whose node appears in `skip_targets` get increment 0.  Both lists
/// must be sorted by key.  Single linear pass.
std::vector<Value> merge_scan_cross(const KeyedList& sources, const KeyedList& targets,
                                    CoverageMode mode, std::span<const NodeId> skip_targets = {});

/// Builds the parent's four lists and terminal distances from solved
/// children, dropping ghost duplicates so each node appears exactly once.
TtsbResult list_propagate(const TtsbGraph& parent, const Subdivision& sub,
                          std::span<const TtsbResult> child_results);

struct EngineContext {
  const Bitree* bitree = nullptr;
  CoverageMode mode = CoverageMode::Weak;
  PenaltyVector* acc = nullptr;
  EngineStats* stats = nullptr;
  SubdivisionObserver* observer = nullptr;
  int depth = 0;
};

/// The whole bitree as a TTSB spanned by its two smallest-id leaves.
TtsbGraph make_root_graph(const Bitree& b);

/// Recursive engine: accumulates every cross-pair penalty into ctx.acc and
/// returns the lists for the parent level.
TtsbResult solve_ttsb(EngineContext& ctx, TtsbGraph g);

}  // namespace engine

/// p'(v) for every node of a degree-<=3 bitree in O(n log n).
PenaltyVector compute_all_penalties(const Bitree& b, CoverageMode mode,
                                    engine::EngineStats* stats = nullptr,
                                    engine::SubdivisionObserver* observer = nullptr);

/// Quadratic oracle: applies the definition of p' with one fresh traversal
/// per source node.  Shares no code with the engine's recursion.
PenaltyVector naive_penalties(const Bitree& b, CoverageMode mode, NodeId max_n = 5000);

}  // namespace covertree
