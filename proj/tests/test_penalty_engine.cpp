#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "covertree/covering_dp.hpp"
#include "covertree/generator.hpp"
#include "covertree/penalty_engine.hpp"
#include "subdivision_checks.hpp"
#include "test_util.hpp"

using namespace covertree;
using namespace covertree::testutil;

namespace {

engine::TtsbGraph whole_tree(const Instance& inst) {
  NormalizedTree norm = normalize_degree(inst, 1);
  return engine::make_root_graph(build_symmetric(norm));
}

std::vector<Value> keys_of(const KeyedList& list) {
  std::vector<Value> out;
  for (const auto& e : list) out.push_back(e.key.finite_value());
  return out;
}

}  // namespace

TEST_CASE("median of a path of five is the middle node") {
  engine::TtsbGraph g = whole_tree(make_path(5));
  CHECK(g.nodes[find_unweighted_median(g)] == 3);
}

TEST_CASE("median of a star is its center") {
  engine::TtsbGraph g = whole_tree(make_star(3));
  CHECK(g.nodes[find_unweighted_median(g)] == 1);
}

TEST_CASE("median ties resolve to the smaller preorder index") {
  engine::TtsbGraph g = whole_tree(make_path(4));
  // Nodes 2 and 3 are both valid; the DFS from terminal 1 reaches 2 first.
  CHECK(g.nodes[find_unweighted_median(g)] == 2);
}

TEST_CASE("path subdivision splits at the median into two sides") {
  engine::TtsbGraph g = whole_tree(make_path(5));
  engine::Subdivision sub = engine::subdivide_ttsb(g);
  CHECK(!sub.off_path);
  CHECK(sub.median == 3);
  REQUIRE(sub.children.size() == 2);
  CHECK(sub.children[0].size() == 3);
  CHECK(sub.children[1].size() == 3);
  CHECK(!check_subdivision(g, sub));
}

TEST_CASE("six-node tee: on-path median with a four-node branch child") {
  // Path 1-2-3 with a chain 2-4-5-6.  Both 2 and 4 satisfy the median bound;
  // the smaller preorder index wins, giving three children.
  Instance inst = make_instance(
      6, {{1, 2, 1}, {2, 3, 1}, {2, 4, 1}, {4, 5, 1}, {5, 6, 1}},
      {1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0});
  engine::TtsbGraph g = whole_tree(inst);
  CHECK(g.nodes[g.s] == 1);
  CHECK(g.nodes[g.t] == 3);
  engine::Subdivision sub = engine::subdivide_ttsb(g);
  CHECK(!sub.off_path);
  CHECK(sub.median == 2);
  REQUIRE(sub.children.size() == 3);
  std::vector<std::size_t> sizes;
  for (const auto& c : sub.children) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 4});
  CHECK(!check_subdivision(g, sub));
}

TEST_CASE("full off-path shape produces five children with size sum |S|+4") {
  // Terminal path 1-2-3-4-5, a chain 3-6-7 to the median 7, and two
  // three-node pendants at 7.  Node 7 is the unique median.
  Instance inst = make_instance(13,
                                {{1, 2, 1},
                                 {2, 3, 1},
                                 {3, 4, 1},
                                 {4, 5, 1},
                                 {3, 6, 1},
                                 {6, 7, 1},
                                 {7, 8, 1},
                                 {8, 9, 1},
                                 {9, 10, 1},
                                 {7, 11, 1},
                                 {11, 12, 1},
                                 {12, 13, 1}},
                                std::vector<Value>(13, 1), std::vector<Value>(13, 0));
  engine::TtsbGraph g = whole_tree(inst);
  CHECK(g.nodes[g.s] == 1);
  engine::Subdivision sub = engine::subdivide_ttsb(g);
  CHECK(sub.off_path);
  CHECK(sub.median == 7);
  CHECK(sub.median_anchor == 3);
  REQUIRE(sub.children.size() == 5);
  std::size_t total = 0;
  for (const auto& c : sub.children) total += c.size();
  CHECK(total == 13 + 4);
  CHECK(!check_subdivision(g, sub));
}

TEST_CASE("merge-scan cross increments, weak vs strict ties") {
  KeyedList sources{{ExtScalar::finite(1), 10, 2}, {ExtScalar::finite(4), 11, 3}};
  KeyedList targets{{ExtScalar::finite(1), 20, 0}, {ExtScalar::finite(5), 21, 0}};
  CHECK(engine::merge_scan_cross(sources, targets, CoverageMode::Weak) ==
        std::vector<Value>{0, 5});
  CHECK(engine::merge_scan_cross(sources, targets, CoverageMode::Strict) ==
        std::vector<Value>{2, 5});
  CHECK(engine::merge_scan_cross({}, targets, CoverageMode::Weak) == std::vector<Value>{0, 0});
}

TEST_CASE("merge-scan skips targets that live in the source child") {
  KeyedList sources{{ExtScalar::finite(0), 10, 7}};
  KeyedList targets{{ExtScalar::finite(3), 20, 0}, {ExtScalar::finite(4), 21, 0}};
  NodeId skip[] = {21};
  CHECK(engine::merge_scan_cross(sources, targets, CoverageMode::Weak, skip) ==
        std::vector<Value>{7, 0});
}

TEST_CASE("offset copies preserve order and shift keys") {
  KeyedList list{{ExtScalar::finite(1), 1, 0}, {ExtScalar::finite(3), 2, 0}};
  KeyedList shifted = engine::offset_list(list, ExtScalar::finite(10));
  CHECK(keys_of(shifted) == std::vector<Value>{11, 13});
  KeyedList inf = engine::offset_list(list, ExtScalar::neg_inf());
  CHECK(inf[0].key.is_neg_inf());
}

TEST_CASE("root lists of a unit path carry the path distances") {
  Instance inst = make_path(5);
  NormalizedTree norm = normalize_degree(inst, 1);
  Bitree b = build_symmetric(norm);
  PenaltyVector acc(static_cast<std::size_t>(b.n) + 1, 0);
  engine::EngineContext ctx;
  ctx.bitree = &b;
  ctx.mode = CoverageMode::Weak;
  ctx.acc = &acc;
  engine::TtsbResult r = engine::solve_ttsb(ctx, engine::make_root_graph(b));

  CHECK(keys_of(r.d_s) == std::vector<Value>{0, 1, 2, 3, 4});
  std::vector<NodeId> order;
  for (const auto& e : r.d_s) order.push_back(e.node);
  CHECK(order == std::vector<NodeId>{1, 2, 3, 4, 5});
  CHECK(keys_of(r.d_t) == std::vector<Value>{0, 1, 2, 3, 4});
  CHECK(r.d_st == ExtScalar::finite(4));
  CHECK(r.d_ts == ExtScalar::finite(4));
}

TEST_CASE("radius keys of sources above the terminal become +inf and sort last") {
  Instance inst = make_path(2, /*pi=*/1, /*rho=*/5);
  NormalizedTree norm = normalize_degree(inst, 1);
  Bitree b = build_descendant(norm);
  PenaltyVector acc(static_cast<std::size_t>(b.n) + 1, 0);
  engine::EngineContext ctx;
  ctx.bitree = &b;
  ctx.mode = CoverageMode::Weak;
  ctx.acc = &acc;
  engine::TtsbResult r = engine::solve_ttsb(ctx, engine::make_root_graph(b));

  // Toward terminal 2 the root can only be reached over the -inf arc, so its
  // radius key is +inf and orders after every finite key.
  REQUIRE(r.rho_t.size() == 2);
  CHECK(r.rho_t.back().node == 1);
  CHECK(r.rho_t.back().key.is_pos_inf());
}

TEST_CASE("penalties of instance A under the symmetric construction") {
  Instance inst = instance_a();
  NormalizedTree norm = normalize_degree(inst, 1);
  Bitree b = build_symmetric(norm);
  PenaltyVector p = compute_all_penalties(b, CoverageMode::Weak);
  CHECK(p[1] == 5);
  CHECK(p[2] == 9);
  CHECK(p[3] == 6);
}

TEST_CASE("single node and all-zero penalties") {
  Instance one = parse_instance("1\n\n4 2\n");
  NormalizedTree norm = normalize_degree(one, 1);
  CHECK(compute_all_penalties(build_symmetric(norm), CoverageMode::Weak)[1] == 0);

  GenConfig cfg;
  cfg.seed = 5;
  cfg.n_max = 40;
  cfg.pi_max = 0;
  Instance inst = gen_random_tree(cfg);
  NormalizedTree n2 = normalize_degree(inst, 1);
  PenaltyVector p = compute_all_penalties(build_symmetric(n2), CoverageMode::Strict);
  CHECK(std::all_of(p.begin(), p.end(), [](Value v) { return v == 0; }));
}

TEST_CASE("radii at or above the diameter silence every source") {
  Instance inst = make_path(6, /*pi=*/3, /*rho=*/100);
  NormalizedTree norm = normalize_degree(inst, 1);
  PenaltyVector p = compute_all_penalties(build_symmetric(norm), CoverageMode::Weak);
  CHECK(std::all_of(p.begin(), p.end(), [](Value v) { return v == 0; }));
}

TEST_CASE("penalty bounds, mode ordering and radius monotonicity") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenConfig cfg;
    cfg.seed = seed * 131;
    cfg.n_max = 60;
    Instance inst = gen_random_tree(cfg);
    NormalizedTree norm = normalize_degree(inst, 1);
    Bitree b = build_symmetric(norm);
    Value pi_total = 0;
    for (NodeId v = 1; v <= b.n; ++v) pi_total += b.pi[v];

    PenaltyVector weak = compute_all_penalties(b, CoverageMode::Weak);
    PenaltyVector strict = compute_all_penalties(b, CoverageMode::Strict);
    for (NodeId v = 1; v <= b.n; ++v) {
      CHECK(weak[v] >= 0);
      CHECK(weak[v] <= pi_total);
      CHECK(strict[v] >= weak[v]);
    }

    // Raising one radius never increases any penalty.
    SplitMix64 rng(seed);
    Bitree bumped = b;
    NodeId who = static_cast<NodeId>(1 + rng.next_below(static_cast<std::uint64_t>(b.n)));
    bumped.rho[who] += rng.next_in(1, 10);
    PenaltyVector after = compute_all_penalties(bumped, CoverageMode::Weak);
    for (NodeId v = 1; v <= b.n; ++v) CHECK(after[v] <= weak[v]);
  }
}

TEST_CASE("subdivision invariants hold over full recursion traces") {
  CheckingObserver obs;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenConfig cfg;
    cfg.seed = seed * 17 + 3;
    cfg.n_max = 120;
    Instance inst = gen_random_tree(cfg);
    NormalizedTree norm = normalize_degree(inst, 1);
    compute_all_penalties(build_symmetric(norm), CoverageMode::Weak, nullptr, &obs);
    compute_all_penalties(build_descendant(norm), CoverageMode::Weak, nullptr, &obs);
  }
  CHECK(obs.seen > 100);
  if (obs.first_error) FAIL(*obs.first_error);
}

TEST_CASE("recursion depth stays logarithmic") {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.n_min = cfg.n_max = 4096;
  Instance inst = gen_random_tree(cfg);
  NormalizedTree norm = normalize_degree(inst, 1);
  engine::EngineStats stats;
  compute_all_penalties(build_symmetric(norm), CoverageMode::Weak, &stats);
  CHECK(stats.max_depth <= 16);  // ~log2(8192) + slack for the +1 in child sizes
}

TEST_CASE("oracle cap is enforced") {
  Instance inst = make_path(3);
  NormalizedTree norm = normalize_degree(inst, 1);
  CHECK_THROWS_AS(naive_penalties(build_symmetric(norm), CoverageMode::Weak, 2),
                  std::invalid_argument);
}

TEST_CASE("values at the magnitude ceiling stay exact") {
  // Costs, penalties and radii near 10^9 on a thousand nodes: key offsets
  // reach a few 10^12 and must neither overflow nor lose exactness.
  GenConfig cfg;
  cfg.seed = 2024;
  cfg.n_min = cfg.n_max = 1000;
  cfg.cost_min = 900000000;
  cfg.cost_max = 1000000000;
  cfg.pi_min = 900000000;
  cfg.pi_max = 1000000000;
  cfg.rho_min = 0;
  cfg.rho_max = 1000000000LL * 600;  // some radii span hundreds of edges
  Instance inst = gen_random_tree(cfg);
  NormalizedTree norm = normalize_degree(inst, 1);
  FatherSubdivided father = build_father_subdivided(norm);
  const Bitree bitrees[] = {build_symmetric(norm), build_descendant(norm), father.bitree};
  for (const Bitree& b : bitrees)
    for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict})
      CHECK(compute_all_penalties(b, mode) == naive_penalties(b, mode));
}

TEST_CASE("engine handles arbitrary arc orientations, not just the constructions") {
  // Random per-edge patterns: symmetric, asymmetric finite, -inf one way or
  // both; plus all-zero-cost trees to storm the tie rules.
  for (std::uint64_t trial = 1; trial <= 400; ++trial) {
    GenConfig cfg;
    cfg.seed = trial * 1315423911ULL;
    cfg.n_max = 80;
    cfg.cost_max = trial % 3 == 0 ? 0 : 6;
    cfg.rho_max = trial % 2 ? 2 : 25;
    Instance inst = gen_random_tree(cfg);
    NormalizedTree norm = normalize_degree(inst, static_cast<NodeId>(1 + trial % inst.n));

    SplitMix64 rng(trial);
    Bitree b;
    b.n = norm.tree.n;
    b.adj.assign(static_cast<std::size_t>(b.n) + 1, {});
    b.pi = norm.tree.pi;
    b.rho = norm.tree.rho;
    for (const auto& e : norm.tree.edges) {
      ExtScalar fwd = ExtScalar::finite(e.cost);
      ExtScalar rev = ExtScalar::finite(static_cast<Value>(rng.next_below(7)));
      switch (rng.next_below(5)) {
        case 0: rev = fwd; break;
        case 1: break;
        case 2: fwd = ExtScalar::neg_inf(); break;
        case 3: rev = ExtScalar::neg_inf(); break;
        case 4: fwd = rev = ExtScalar::neg_inf(); break;
      }
      b.add_edge(e.a, e.b, fwd, rev);
    }
    for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict})
      REQUIRE(compute_all_penalties(b, mode) == naive_penalties(b, mode));
  }
}
