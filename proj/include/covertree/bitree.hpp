#pragma once

#include <array>
#include <vector>

#include "covertree/instance.hpp"

namespace covertree {

/// Directed double-arc tree.  Every undirected edge is represented by two
/// anti-parallel arcs whose costs may differ and may be -inf (+inf never
/// appears as an arc cost).  Maximum degree is 3.
struct Bitree {
  struct Arc {
    NodeId to = 0;
    ExtScalar out;  // cost of (v -> to)
    ExtScalar in;   // cost of (to -> v)
  };

  NodeId n = 0;
  std::vector<std::vector<Arc>> adj;  // size n+1, index 0 unused
  std::vector<Value> pi;              // size n+1
  std::vector<Value> rho;             // size n+1

  void add_edge(NodeId a, NodeId b, ExtScalar cost_ab, ExtScalar cost_ba);
  int degree(NodeId v) const { return static_cast<int>(adj[v].size()); }
};

/// Both arc directions carry the undirected cost; p'(v) on the result equals
/// p(v) on the tree.
Bitree build_symmetric(const NormalizedTree& t);

/// Upward arcs keep the original cost, downward arcs are -inf, so only
/// descendants of v can impose a penalty on v: p'(v) = p(T_v, v).
Bitree build_descendant(const NormalizedTree& t);

/// Subdivides every father edge with a zero-penalty node and orients the
/// enlarged tree as in build_descendant.  p'(fprime[v]) equals p(T_v, f(v)).
struct FatherSubdivided {
  Bitree bitree;                 // 2n'-1 nodes
  std::vector<NodeId> fprime;    // normalized id -> subdivision node id (0 for root)
};

FatherSubdivided build_father_subdivided(const NormalizedTree& t);

}  // namespace covertree
