#pragma once

#include <span>

#include "covertree/covering_dp.hpp"

namespace covertree {

/// Competitive location input: the tree's pi column stores the node weights
/// w(u); X is the nonempty set of existing competitor nodes.
struct MedianoidInstance {
  Instance tree;
  std::vector<NodeId> x;
};

struct MedianoidResult {
  NodeId node = 0;      // best location for the single new facility
  Value captured = 0;   // w(node < X): weight strictly closer to node than to X
  std::vector<Value> captured_by_node;  // diagnostic, size n+1
};

/// d(u, X) = min over x in X of d(u, x), for every u, in linear time by a
/// two-pass rerooting traversal.  Throws on empty or invalid X.
std::vector<Value> distances_to_set(const Instance& inst, std::span<const NodeId> x);

/// (1,X)-medianoid: place one node maximizing the total weight of customers
/// strictly closer to it than to X.  Reduces to single maximum coverage with
/// rho(u) = d(u,X) under strict coverage; ties to the smallest id.
MedianoidResult solve_medianoid(const MedianoidInstance& mi);

/// Quadratic oracle: counts captured weight per candidate with fresh
/// per-candidate distances.
MedianoidResult naive_medianoid(const MedianoidInstance& mi, NodeId max_n = 5000);

}  // namespace covertree
