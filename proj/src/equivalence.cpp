#include "covertree/equivalence.hpp"

#include <sstream>

#include "covertree/covering_dp.hpp"

namespace covertree {

namespace {

struct TrialContext {
  EquivalenceReport* report;
  int trial;
  std::uint64_t seed;
};

void record(TrialContext& ctx, const std::string& check, bool pass, const std::string& detail,
            const std::string& instance_text) {
  ctx.report->lines.push_back({ctx.trial, ctx.seed, check, pass});
  if (!pass) ctx.report->failures.push_back({ctx.trial, ctx.seed, check, detail, instance_text});
}

std::string diff_vectors(const std::vector<Value>& fast, const std::vector<Value>& slow) {
  std::ostringstream out;
  for (std::size_t v = 1; v < fast.size(); ++v)
    if (fast[v] != slow[v])
      out << "node " << v << ": engine " << fast[v] << " oracle " << slow[v] << "; ";
  return out.str();
}

void check_penalties(TrialContext& ctx, const SuiteConfig& cfg, SplitMix64& rng) {
  GenConfig gen;
  gen.seed = rng.next();
  gen.n_min = 1;
  gen.n_max = static_cast<NodeId>(cfg.nmax);
  Instance inst = gen_random_tree(gen);
  NormalizedTree norm = normalize_degree(inst, 1);
  FatherSubdivided father = build_father_subdivided(norm);

  const Bitree bitrees[] = {build_symmetric(norm), build_descendant(norm),
                            std::move(father.bitree)};
  EngineFn engine = cfg.engine ? cfg.engine : [](const Bitree& b, CoverageMode m) {
    return compute_all_penalties(b, m);
  };

  bool pass = true;
  std::string detail;
  for (const Bitree& b : bitrees) {
    for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict}) {
      PenaltyVector fast = engine(b, mode);
      PenaltyVector slow = naive_penalties(b, mode);
      if (fast != slow && pass) {
        pass = false;
        detail = diff_vectors(fast, slow);
      }
    }
  }
  record(ctx, "penalty", pass, detail, serialize_instance(inst));
}

void check_solve(TrialContext& ctx, SplitMix64& rng) {
  GenConfig gen;
  gen.seed = rng.next();
  gen.n_min = 1;
  gen.n_max = 12;
  Instance inst = gen_random_tree(gen);

  bool pass = true;
  std::string detail;
  for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict}) {
    Solution fast = solve_indirect(inst, mode);
    Solution slow = oracle_enumerate(inst, mode);
    if (fast.total != slow.total) {
      pass = false;
      std::ostringstream out;
      out << "solver " << fast.total << " oracle " << slow.total;
      detail = out.str();
      break;
    }
    SubtreeCost recheck = evaluate_subtree(inst, fast.nodes, mode);
    if (recheck.total() != fast.total) {
      pass = false;
      detail = "witness re-evaluation mismatch";
      break;
    }
  }
  record(ctx, "solve", pass, detail, serialize_instance(inst));
}

void check_medianoid(TrialContext& ctx, const SuiteConfig& cfg, SplitMix64& rng) {
  GenConfig gen;
  gen.seed = rng.next();
  gen.n_min = 1;
  gen.n_max = static_cast<NodeId>(cfg.nmax);
  MedianoidInstance mi;
  mi.tree = gen_random_tree(gen);
  auto x_count = 1 + rng.next_below(5);
  for (std::uint64_t i = 0; i < x_count; ++i)
    mi.x.push_back(static_cast<NodeId>(1 + rng.next_below(static_cast<std::uint64_t>(mi.tree.n))));

  MedianoidResult fast = solve_medianoid(mi);
  MedianoidResult slow = naive_medianoid(mi);
  bool pass = fast.captured == slow.captured && fast.node == slow.node;
  std::ostringstream out;
  if (!pass)
    out << "solver node " << fast.node << " captured " << fast.captured << ", oracle node "
        << slow.node << " captured " << slow.captured;
  record(ctx, "medianoid", pass, out.str(), serialize_instance(mi.tree));
}

WnTuple random_interleaved_tuple(SplitMix64& rng, std::size_t n) {
  // x_1 < y_1 < x_2 < y_2 < ... with random positive gaps.
  WnTuple t;
  Value at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    at += static_cast<Value>(1 + rng.next_below(5));
    t.xs.push_back(at);
    at += static_cast<Value>(1 + rng.next_below(5));
    t.ys.push_back(at);
  }
  return t;
}

void check_hardness(TrialContext& ctx, SplitMix64& rng) {
  std::size_t n = 1 + rng.next_below(20);
  WnTuple t = random_interleaved_tuple(rng, n);
  bool collide = rng.next_below(2) == 0;
  if (collide) {
    // One-point collision flips membership.
    t.ys[rng.next_below(n)] = t.xs[rng.next_below(n)];
  }

  WnMembership expected = naive_wn_check(t);
  WnMembership solver = decide_wn_membership(t);
  WnMembership medianoid = decide_wn_membership_via_medianoid(t);
  bool pass = expected == solver && expected == medianoid &&
              (expected == WnMembership::Member) == !collide;

  std::ostringstream text;
  text << "xs:";
  for (Value v : t.xs) text << ' ' << v;
  text << " ys:";
  for (Value v : t.ys) text << ' ' << v;
  record(ctx, "hardness", pass, pass ? "" : "tri-oracle disagreement", text.str());
}

}  // namespace

EquivalenceReport run_equivalence_suite(const SuiteConfig& cfg, int trials) {
  EquivalenceReport report;
  report.trials = trials;
  auto wanted = [&](const char* name) {
    return cfg.only_check.empty() || cfg.only_check == name;
  };
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 seeder(cfg.seed + static_cast<std::uint64_t>(trial));
    std::uint64_t trial_seed = seeder.next();
    SplitMix64 rng(trial_seed);
    TrialContext ctx{&report, trial, trial_seed};
    if (wanted("penalty")) check_penalties(ctx, cfg, rng);
    if (wanted("solve")) check_solve(ctx, rng);
    if (wanted("medianoid")) check_medianoid(ctx, cfg, rng);
    if (wanted("hardness")) check_hardness(ctx, rng);
  }
  return report;
}

std::string render_report(const EquivalenceReport& report) {
  std::ostringstream out;
  out << "equivalence suite: " << report.trials << " trials, " << report.failures.size()
      << " failures\n";
  for (const auto& f : report.failures) {
    out << "FAILURE trial " << f.trial << " seed " << f.seed << " check " << f.check << ": "
        << f.detail << "\nreproducer:\n" << f.instance_text << "\n";
  }
  for (const auto& line : report.lines)
    out << line.trial << ',' << line.seed << ',' << line.check << ','
        << (line.pass ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace covertree
