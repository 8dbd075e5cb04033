#pragma once

#include "covertree/penalty_engine.hpp"

namespace covertree {

/// The three penalty values per original node that drive the DP:
///   p_all[v]            = p(v)         (every customer vs. target v)
///   p_subtree[v]        = p(T_v, v)    (customers below v vs. target v)
///   p_subtree_father[v] = p(T_v, f(v)) (customers below v vs. target f(v))
struct PTriples {
  std::vector<Value> p_all, p_subtree, p_subtree_father;  // size n+1
};

PTriples compute_p_triples(const Instance& inst, NodeId root, CoverageMode mode);

enum class Choice : std::uint8_t { TookEdge, PaidPenalty };

struct DpTables {
  std::vector<Value> c;        // C(v):  best cost of a subtree of T_v containing v
  std::vector<Value> c_plus;   // C+(v): best cost of a subtree of T_v+ containing f(v)
  std::vector<Choice> choice;  // which branch attained C+(v)
};

struct Solution {
  Value total = 0;
  Value setup = 0;
  Value penalty = 0;
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
};

struct SolveDetail {
  Solution solution;
  PTriples triples;
  DpTables tables;
  NodeId root = 0;
};

/// Optimal subtree facility: minimizes setup cost plus penalties of all
/// customers farther than their radius from the facility.  The witness is
/// always re-evaluated against the definition before returning.
Solution solve_indirect(const Instance& inst, CoverageMode mode);
SolveDetail solve_indirect_detail(const Instance& inst, CoverageMode mode);

struct MaxCovResult {
  NodeId node = 0;
  Value penalty = 0;  // p(node)
  Value covered = 0;  // total penalty weight minus p(node)
};

/// Best single-node facility: argmin_v p(v), ties to the smallest id.
MaxCovResult solve_single_maxcov(const Instance& inst, CoverageMode mode);

/// p(v) for every node via the symmetric construction (index 0 unused).
std::vector<Value> penalty_vector(const Instance& inst, CoverageMode mode);

/// Exhaustive oracle over every connected node subset; n <= 14.
Solution oracle_enumerate(const Instance& inst, CoverageMode mode);

/// Direct covering: a customer is covered only by membership in the
/// facility.  Realized as the radius-zero special case; requires all edge
/// costs positive so that d(u,Y) <= 0 iff u is in Y.
Solution solve_direct(const Instance& inst);

/// Setup and penalty of a given connected node set, evaluated from the
/// definitions (multi-source distances, no DP state).
struct SubtreeCost {
  Value setup = 0;
  Value penalty = 0;
  Value total() const { return setup + penalty; }
};
SubtreeCost evaluate_subtree(const Instance& inst, std::span<const NodeId> nodes,
                             CoverageMode mode);

}  // namespace covertree
