#pragma once

#include <string>
#include <vector>

#include "covertree/instance.hpp"

namespace covertree::testutil {

// Three-node path used across the suites: costs 2 and 3, penalties/radii
// (5,1), (1,0), (4,2).
inline const char* kInstanceAText =
    "3\n"
    "1 2 2\n"
    "2 3 3\n"
    "5 1\n"
    "1 0\n"
    "4 2\n";

inline Instance instance_a() { return parse_instance(kInstanceAText); }

inline Instance make_instance(NodeId n, std::vector<Instance::Edge> edges,
                              std::vector<Value> pi, std::vector<Value> rho) {
  Instance inst;
  inst.n = n;
  inst.edges = std::move(edges);
  inst.pi.assign(static_cast<std::size_t>(n) + 1, 0);
  inst.rho.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 1; v <= n; ++v) {
    inst.pi[v] = pi[v - 1];
    inst.rho[v] = rho[v - 1];
  }
  validate_instance(inst);
  return inst;
}

// Star with the center as node 1 and `leaves` unit-cost leaf edges.
inline Instance make_star(NodeId leaves) {
  Instance inst;
  inst.n = leaves + 1;
  for (NodeId i = 2; i <= inst.n; ++i) inst.edges.push_back({1, i, 1});
  inst.pi.assign(static_cast<std::size_t>(inst.n) + 1, 1);
  inst.rho.assign(static_cast<std::size_t>(inst.n) + 1, 0);
  inst.pi[0] = inst.rho[0] = 0;
  validate_instance(inst);
  return inst;
}

// Unit-cost path on n nodes with uniform penalty and radius.
inline Instance make_path(NodeId n, Value pi = 1, Value rho = 0) {
  Instance inst;
  inst.n = n;
  for (NodeId i = 2; i <= n; ++i) inst.edges.push_back({i - 1, i, 1});
  inst.pi.assign(static_cast<std::size_t>(n) + 1, pi);
  inst.rho.assign(static_cast<std::size_t>(n) + 1, rho);
  inst.pi[0] = inst.rho[0] = 0;
  validate_instance(inst);
  return inst;
}

}  // namespace covertree::testutil
