#pragma once

#include "covertree/medianoid.hpp"

namespace covertree {

/// Input tuple of the interleaving/disjointness language W_n: member iff
/// xs is strictly increasing and no x_i equals any y_j.  All values must be
/// positive integers.
struct WnTuple {
  std::vector<Value> xs;
  std::vector<Value> ys;

  std::size_t size() const { return xs.size(); }
};

/// The adversarial coverage instance derived from a tuple: a long edge (u,v)
/// subdivided at the x positions, one pendant per y on each side, uniform
/// radius and unit penalties.  Minimum single-node penalty is n exactly when
/// the tuple is a member, and at most n-1 otherwise.
struct WnInstance {
  Instance instance;            // 3n+2 nodes
  Value edge_uv_cost = 0;       // c(u,v) = max value + 1
  Value radius = 0;             // rho = c(u,v) + 1
  NodeId u = 0, v = 0;
  std::vector<NodeId> u_side;   // u_i, pendant of u at distance rho - y_i
  std::vector<NodeId> v_side;   // v_i, pendant of v at distance y_i + rho - c(u,v)
  std::vector<NodeId> x_path;   // x~_i on the u-v path at distance x_i from u
};

/// Throws std::invalid_argument if xs is not strictly increasing or any
/// value is nonpositive (callers deciding membership check sortedness first
/// and short-circuit to NotMember without building anything).
WnInstance build_wn_instance(const WnTuple& t);

enum class WnMembership { Member, NotMember };

/// Solver-backed decision: NotMember on unsorted xs, otherwise Member iff
/// the minimum single-node penalty of the derived instance equals n.
WnMembership decide_wn_membership(const WnTuple& t);

/// Definitional check: sortedness plus pairwise x_i != y_j.
WnMembership naive_wn_check(const WnTuple& t);

/// Extends the coverage instance with one pendant leaf per node at distance
/// rho + 1; X is exactly the set of leaves.  For every original node y the
/// captured weight equals (3n+2) - p(y), so membership is decidable from the
/// medianoid optimum.
MedianoidInstance build_medianoid_hardness(const WnTuple& t);

/// Membership as read off the medianoid optimum of the enhanced tree.
WnMembership decide_wn_membership_via_medianoid(const WnTuple& t);

}  // namespace covertree
