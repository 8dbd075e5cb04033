// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "covertree/bench.hpp"
#include "covertree/covering_dp.hpp"
#include "covertree/equivalence.hpp"
#include "covertree/hardness.hpp"
#include "covertree/medianoid.hpp"
#include "subdivision_checks.hpp"

using namespace covertree;
using covertree::testutil::check_subdivision;

namespace {

struct Criterion {
  int number = 0;
  std::string description;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> g_results;

class Runner {
 public:
  Runner(int number, std::string description) {
    crit_.number = number;
    crit_.description = std::move(description);
    start_ = std::chrono::steady_clock::now();
  }

  void fail(const std::string& detail) {
    crit_.pass = false;
    if (crit_.detail.empty()) crit_.detail = detail;
  }

  void note(const std::string& detail) {
    if (crit_.detail.empty()) crit_.detail = detail;
  }

  ~Runner() {
    auto stop = std::chrono::steady_clock::now();
    crit_.seconds = std::chrono::duration<double>(stop - start_).count();
    g_results.push_back(crit_);
  }

 private:
  Criterion crit_;
  std::chrono::steady_clock::time_point start_;
};

Instance random_instance(std::uint64_t seed, NodeId nmax, Value cost_min = 0) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_min = 1;
  cfg.n_max = nmax;
  cfg.cost_min = cost_min;
  cfg.cost_max = 20;
  cfg.pi_min = 0;
  cfg.pi_max = 10;
  cfg.rho_min = 0;
  cfg.rho_max = 40;
  return gen_random_tree(cfg);
}

WnTuple interleaved_tuple(SplitMix64& rng, std::size_t n) {
  WnTuple t;
  Value at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    at += static_cast<Value>(1 + rng.next_below(4));
    t.xs.push_back(at);
    at += static_cast<Value>(1 + rng.next_below(4));
    t.ys.push_back(at);
  }
  return t;
}

// 1. Engine vs. quadratic oracle: 500 instances per construction, n in
//    [1,200], both modes, exact.
void criterion_engine_oracle() {
  Runner run(1, "penalty engine equals the quadratic oracle on 500 instances per construction");
  for (int trial = 0; trial < 500; ++trial) {
    Instance inst = random_instance(1000 + static_cast<std::uint64_t>(trial) * 7, 200);
    NormalizedTree norm = normalize_degree(inst, 1);
    FatherSubdivided father = build_father_subdivided(norm);
    const Bitree bitrees[] = {build_symmetric(norm), build_descendant(norm), father.bitree};
    for (const Bitree& b : bitrees) {
      for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict}) {
        if (compute_all_penalties(b, mode) != naive_penalties(b, mode)) {
          run.fail("mismatch at trial " + std::to_string(trial) + "\n" +
                   serialize_instance(inst));
          return;
        }
      }
    }
  }
}

// 2 + 3. Solver vs. exhaustive enumeration with witness re-evaluation, and
//        the recurrence audit on every solved instance.
void criterion_solver_oracle_and_dp_audit() {
  Runner solve_run(2, "indirect solver equals exhaustive enumeration on 300 instances");
  Runner dp_run(3, "DP tables satisfy the recurrences on every solved instance");
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = random_instance(9000 + static_cast<std::uint64_t>(trial) * 13, 12);
    for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict}) {
      SolveDetail detail = solve_indirect_detail(inst, mode);
      Solution slow = oracle_enumerate(inst, mode);
      if (detail.solution.total != slow.total)
        solve_run.fail("cost mismatch at trial " + std::to_string(trial) + "\n" +
                       serialize_instance(inst));
      if (evaluate_subtree(inst, detail.solution.nodes, mode).total() != detail.solution.total)
        solve_run.fail("witness re-evaluation mismatch at trial " + std::to_string(trial));

      RootedTree rt = root_tree(inst, detail.root);
      for (NodeId v = 1; v <= inst.n; ++v) {
        Value c = mode == CoverageMode::Strict && inst.rho[v] == 0 ? inst.pi[v] : 0;
        for (NodeId u : rt.children[v]) c += detail.tables.c_plus[u];
        bool ok = detail.tables.c[v] == c;
        if (v != detail.root)
          ok = ok && detail.tables.c_plus[v] ==
                         std::min(detail.tables.c[v] + rt.father_cost[v],
                                  detail.triples.p_subtree_father[v]);
        if (!ok)
          dp_run.fail("recurrence violated at node " + std::to_string(v) + "\n" +
                      serialize_instance(inst));
      }
    }
  }
}

// 4. Hardness family: members decide at minimum penalty exactly n; a single
//    collision drops it to exactly n-1.
void criterion_hardness_family() {
  Runner run(4, "W_n members cost exactly n, one-point collisions exactly n-1 (n = 1..50)");
  SplitMix64 rng(777);
  for (std::size_t n = 1; n <= 50; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      WnTuple t = interleaved_tuple(rng, n);
      if (decide_wn_membership(t) != WnMembership::Member ||
          solve_single_maxcov(build_wn_instance(t).instance, CoverageMode::Weak).penalty !=
              static_cast<Value>(n)) {
        run.fail("member tuple misjudged at n=" + std::to_string(n));
        return;
      }
      WnTuple bad = t;
      bad.ys[rng.next_below(n)] = bad.xs[rng.next_below(n)];
      if (decide_wn_membership(bad) != WnMembership::NotMember ||
          solve_single_maxcov(build_wn_instance(bad).instance, CoverageMode::Weak).penalty !=
              static_cast<Value>(n) - 1) {
        run.fail("collision tuple misjudged at n=" + std::to_string(n));
        return;
      }
    }
  }
}

// 5. Medianoid equivalence plus the medianoid-hardness cross-oracle.
void criterion_medianoid() {
  Runner run(5, "medianoid equals its oracle on 300 instances; 200 tuples agree cross-oracle");
  SplitMix64 rng(31415);
  for (int trial = 0; trial < 300; ++trial) {
    MedianoidInstance mi;
    mi.tree = random_instance(50000 + static_cast<std::uint64_t>(trial) * 3, 200);
    auto count = 1 + rng.next_below(5);
    for (std::uint64_t i = 0; i < count; ++i)
      mi.x.push_back(
          static_cast<NodeId>(1 + rng.next_below(static_cast<std::uint64_t>(mi.tree.n))));
    MedianoidResult fast = solve_medianoid(mi);
    MedianoidResult slow = naive_medianoid(mi);
    if (fast.captured != slow.captured || fast.node != slow.node) {
      run.fail("medianoid mismatch at trial " + std::to_string(trial) + "\n" +
               serialize_instance(mi.tree));
      return;
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.next_below(10);
    WnTuple t = interleaved_tuple(rng, n);
    if (rng.next_below(2) == 0) t.ys[rng.next_below(n)] = t.xs[rng.next_below(n)];
    WnMembership expect = naive_wn_check(t);
    if (decide_wn_membership(t) != expect || decide_wn_membership_via_medianoid(t) != expect) {
      run.fail("tri-oracle disagreement at tuple trial " + std::to_string(trial));
      return;
    }
  }
}

// 6. Scaling costs and radii by sum(pi)/min-positive-cost + 1 collapses the
//    subtree problem onto single maximum coverage with a single-node witness.
void criterion_scaling_reduction() {
  Runner run(6, "scaling reduction collapses to max coverage with single-node witnesses");
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = random_instance(120000 + static_cast<std::uint64_t>(trial) * 11, 25,
                                    /*cost_min=*/1);
    Value min_cost = inst.edges.empty() ? 1 : inst.edges[0].cost;
    for (const auto& e : inst.edges) min_cost = std::min(min_cost, e.cost);
    Value factor = inst.pi_sum() / min_cost + 1;

    Instance scaled = inst;
    for (auto& e : scaled.edges) e.cost *= factor;
    for (NodeId v = 1; v <= inst.n; ++v) scaled.rho[v] *= factor;
    validate_instance(scaled);

    Solution sol = solve_indirect(scaled, CoverageMode::Weak);
    MaxCovResult best = solve_single_maxcov(scaled, CoverageMode::Weak);
    if (sol.total != best.penalty || sol.nodes.size() != 1) {
      run.fail("reduction failed at trial " + std::to_string(trial) + "\n" +
               serialize_instance(inst));
      return;
    }
  }
}

// 7. Empirical complexity: doubling ratios, wall-clock bound at 2^17, and
//    the machine-independent merge-scan touch budget.
void criterion_empirical_complexity() {
  Runner run(7, "doubling ratio <= 2.7, 2^17 under 5 s, touches <= 12 n log2 n");
  const NodeId sizes[] = {8192, 16384, 32768, 65536, 131072};
  const Construction constructions[] = {Construction::Symmetric};
  auto records = run_bench(sizes, 3, 424242, constructions);

  double ratio_sum = 0;
  int ratio_count = 0;
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(2);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    double budget = 12.0 * static_cast<double>(r.n) * std::log2(static_cast<double>(r.n));
    double c_observed = static_cast<double>(r.merge_scan_touches) /
                        (static_cast<double>(r.n) * std::log2(static_cast<double>(r.n)));
    detail << "n=" << r.n << " median=" << r.median_ns / 1e6 << "ms C=" << c_observed << "; ";
    if (static_cast<double>(r.merge_scan_touches) > budget)
      run.fail("touch budget exceeded at n=" + std::to_string(r.n));
    if (i > 0) {
      ratio_sum +=
          static_cast<double>(r.median_ns) / static_cast<double>(records[i - 1].median_ns);
      ++ratio_count;
    }
  }
  double mean_ratio = ratio_sum / ratio_count;
  detail << "mean doubling ratio=" << mean_ratio;
  if (mean_ratio > 2.7) run.fail("mean doubling ratio " + std::to_string(mean_ratio) + " > 2.7");
  if (records.back().median_ns >= 5'000'000'000LL)
    run.fail("n=131072 took " + std::to_string(records.back().median_ns) + " ns");
  run.note(detail.str());
}

// 8. Structural fuzz over at least 10^4 subdivisions from real recursion
//    traces; every record must satisfy the size, partition and ownership
//    invariants.
void criterion_subdivision_fuzz() {
  Runner run(8, "10^4 recursion-trace subdivisions satisfy all structural invariants");
  testutil::CheckingObserver obs;
  std::uint64_t seed = 1;
  while (obs.seen < 10000) {
    Instance inst = random_instance(300000 + seed * 17, 300);
    ++seed;
    if (inst.n < 2) continue;
    NormalizedTree norm = normalize_degree(inst, 1);
    compute_all_penalties(build_symmetric(norm), CoverageMode::Weak, nullptr, &obs);
    compute_all_penalties(build_descendant(norm), CoverageMode::Weak, nullptr, &obs);
    FatherSubdivided father = build_father_subdivided(norm);
    compute_all_penalties(father.bitree, CoverageMode::Weak, nullptr, &obs);
    if (obs.first_error) break;
  }
  if (obs.first_error) run.fail(*obs.first_error);
  run.note(std::to_string(obs.seen) + " subdivisions checked");
}

}  // namespace

int main() {
  criterion_engine_oracle();
  criterion_solver_oracle_and_dp_audit();
  criterion_hardness_family();
  criterion_medianoid();
  criterion_scaling_reduction();
  criterion_empirical_complexity();
  criterion_subdivision_fuzz();

  std::sort(g_results.begin(), g_results.end(),
            [](const Criterion& a, const Criterion& b) { return a.number < b.number; });
  int failures = 0;
  for (const auto& c : g_results) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.description
              << " [" << std::fixed << std::setprecision(1) << c.seconds << "s]";
    if (!c.detail.empty()) std::cout << "\n      " << c.detail;
    std::cout << "\n";
    failures += c.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
