#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "covertree/ext_scalar.hpp"

namespace covertree {

/// Thrown for malformed or semantically invalid input files.  `line` is the
/// 1-based line number in the source text, or 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Format { Text, Structured };

/// An undirected edge-weighted tree with a penalty and a radius per node.
/// Node ids are 1..n; all values are exact nonnegative integers.
struct Instance {
  struct Edge {
    NodeId a = 0;
    NodeId b = 0;
    Value cost = 0;
  };

  NodeId n = 0;
  std::vector<Edge> edges;               // exactly n-1, forming a tree
  std::vector<Value> pi;                 // size n+1, index 0 unused
  std::vector<Value> rho;                // size n+1, index 0 unused
  Value scale = 1;                       // 10^6 when the source text used decimals
  std::vector<std::vector<std::pair<NodeId, Value>>> adj;  // built by validate()

  Value pi_sum() const;
  bool has_node(NodeId v) const { return v >= 1 && v <= n; }

  friend bool operator==(const Instance& x, const Instance& y);
};

/// Parses and validates an instance; throws ParseError on any defect.
Instance parse_instance(std::string_view text, Format format = Format::Text);

/// Emits the instance in the requested format (values in the integer domain).
std::string serialize_instance(const Instance& inst, Format format = Format::Text);

/// Rebuilds `adj` and checks every structural invariant (tree shape, value
/// signs, magnitude bound).  parse_instance calls this; callers constructing
/// instances by hand should too.
void validate_instance(Instance& inst);

/// Rooted view over an instance: father pointers, children lists, preorder.
struct RootedTree {
  NodeId root = 0;
  std::vector<NodeId> father;            // father[root] == root
  std::vector<Value> father_cost;        // cost of (v, father[v]); 0 for root
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> preorder;          // preorder[v] = visit index
  std::vector<NodeId> order;             // nodes in preorder sequence
};

RootedTree root_tree(const Instance& inst, NodeId root);

/// Result of splitting high-degree nodes into chains of copies joined by
/// zero-cost edges.  Copies of original node v keep v's id for the first
/// (canonical) copy, which carries pi and rho; auxiliary copies carry zeros.
struct NormalizedTree {
  Instance tree;                          // max degree <= 3
  NodeId root = 0;                        // canonical copy of the requested root
  std::vector<NodeId> orig_of;            // normalized id -> original id, 0 for auxiliary
  std::vector<std::vector<NodeId>> copies_of;  // original id -> copies, canonical first

  NodeId canonical(NodeId original) const { return copies_of[original][0]; }
};

/// Splits nodes of degree > 3 so every node has degree <= 3 while preserving
/// all distances between original nodes.  Result has at most 2n nodes.
NormalizedTree normalize_degree(const Instance& inst, NodeId root);

/// Distances from `v` to every node (index 0 unused).  Throws on unknown ids.
std::vector<Value> distances_from(const Instance& inst, NodeId v);

}  // namespace covertree
