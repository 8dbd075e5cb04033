#include "covertree/hardness.hpp"

#include <algorithm>

namespace covertree {

namespace {

void check_values(const WnTuple& t) {
  if (t.xs.size() != t.ys.size())
    throw std::invalid_argument("wn tuple: xs and ys must have equal length");
  for (Value v : t.xs)
    if (v <= 0) throw std::invalid_argument("wn tuple: values must be positive");
  for (Value v : t.ys)
    if (v <= 0) throw std::invalid_argument("wn tuple: values must be positive");
}

bool strictly_increasing(const std::vector<Value>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i - 1] >= xs[i]) return false;
  return true;
}

}  // namespace

WnInstance build_wn_instance(const WnTuple& t) {
  check_values(t);
  if (!strictly_increasing(t.xs))
    throw std::invalid_argument("wn tuple: xs not strictly increasing");

  auto n = static_cast<NodeId>(t.size());
  Value max_value = 0;
  for (Value v : t.xs) max_value = std::max(max_value, v);
  for (Value v : t.ys) max_value = std::max(max_value, v);

  WnInstance out;
  out.edge_uv_cost = max_value + 1;
  out.radius = out.edge_uv_cost + 1;

  // Node layout: u, v, then x~_1..x~_n, u_1..u_n, v_1..v_n.
  Instance& inst = out.instance;
  inst.n = 3 * n + 2;
  inst.pi.assign(static_cast<std::size_t>(inst.n) + 1, 1);
  inst.rho.assign(static_cast<std::size_t>(inst.n) + 1, out.radius);
  inst.pi[0] = inst.rho[0] = 0;
  out.u = 1;
  out.v = 2;
  for (NodeId i = 0; i < n; ++i) {
    out.x_path.push_back(3 + i);
    out.u_side.push_back(3 + n + i);
    out.v_side.push_back(3 + 2 * n + i);
  }

  // The u-v edge subdivided at distances x_1 < ... < x_n from u.
  NodeId prev = out.u;
  Value at = 0;
  for (NodeId i = 0; i < n; ++i) {
    inst.edges.push_back({prev, out.x_path[i], t.xs[i] - at});
    prev = out.x_path[i];
    at = t.xs[i];
  }
  inst.edges.push_back({prev, out.v, out.edge_uv_cost - at});

  // One pendant per y on each end: (u, u_i) at rho - y_i and (v, v_i) at
  // y_i + rho - c(u,v).
  for (NodeId i = 0; i < n; ++i) {
    inst.edges.push_back({out.u, out.u_side[i], out.radius - t.ys[i]});
    inst.edges.push_back({out.v, out.v_side[i], t.ys[i] + out.radius - out.edge_uv_cost});
  }

  validate_instance(inst);
  return out;
}

WnMembership decide_wn_membership(const WnTuple& t) {
  check_values(t);
  if (!strictly_increasing(t.xs)) return WnMembership::NotMember;
  if (t.size() == 0) return WnMembership::Member;  // vacuous
  WnInstance wi = build_wn_instance(t);
  MaxCovResult best = solve_single_maxcov(wi.instance, CoverageMode::Weak);
  return best.penalty == static_cast<Value>(t.size()) ? WnMembership::Member
                                                      : WnMembership::NotMember;
}

WnMembership naive_wn_check(const WnTuple& t) {
  check_values(t);
  if (!strictly_increasing(t.xs)) return WnMembership::NotMember;
  for (Value x : t.xs)
    for (Value y : t.ys)
      if (x == y) return WnMembership::NotMember;
  return WnMembership::Member;
}

MedianoidInstance build_medianoid_hardness(const WnTuple& t) {
  WnInstance wi = build_wn_instance(t);
  NodeId base = wi.instance.n;

  MedianoidInstance mi;
  Instance& inst = mi.tree;
  inst.n = 2 * base;
  inst.pi.assign(static_cast<std::size_t>(inst.n) + 1, 0);
  inst.rho.assign(static_cast<std::size_t>(inst.n) + 1, 0);
  inst.edges = wi.instance.edges;
  for (NodeId z = 1; z <= base; ++z) {
    inst.pi[z] = wi.instance.pi[z];  // unit weights on the original nodes
    // Pendant competitor leaf just beyond the uniform radius; +1 realizes
    // the epsilon exactly on integer data.
    inst.edges.push_back({z, base + z, wi.radius + 1});
    mi.x.push_back(base + z);
  }
  validate_instance(inst);
  return mi;
}

WnMembership decide_wn_membership_via_medianoid(const WnTuple& t) {
  check_values(t);
  if (!strictly_increasing(t.xs)) return WnMembership::NotMember;
  if (t.size() == 0) return WnMembership::Member;
  MedianoidInstance mi = build_medianoid_hardness(t);
  MedianoidResult best = solve_medianoid(mi);
  Value customers = 3 * static_cast<Value>(t.size()) + 2;
  return best.captured == customers - static_cast<Value>(t.size()) ? WnMembership::Member
                                                                   : WnMembership::NotMember;
}

}  // namespace covertree
