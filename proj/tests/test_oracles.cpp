#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "covertree/equivalence.hpp"

using namespace covertree;

TEST_CASE("generation is deterministic per seed") {
  GenConfig cfg;
  cfg.seed = 987654321;
  cfg.n_max = 60;
  Instance a = gen_random_tree(cfg);
  Instance b = gen_random_tree(cfg);
  CHECK(a == b);
  cfg.seed += 1;
  CHECK(!(gen_random_tree(cfg) == a));
}

TEST_CASE("shapes produce their structures") {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.n_min = cfg.n_max = 3;
  cfg.shape = TreeShape::Path;
  Instance path = gen_random_tree(cfg);
  CHECK(path.edges[0].a == 1);
  CHECK(path.edges[0].b == 2);
  CHECK(path.edges[1].a == 2);
  CHECK(path.edges[1].b == 3);

  cfg.n_min = cfg.n_max = 9;
  cfg.shape = TreeShape::Star;
  Instance star = gen_random_tree(cfg);
  for (const auto& e : star.edges) CHECK(e.a == 1);

  cfg.shape = TreeShape::BalancedBinary;
  Instance bin = gen_random_tree(cfg);
  for (const auto& e : bin.edges) CHECK(e.a == e.b / 2);

  cfg.n_min = cfg.n_max = 1;
  cfg.shape = TreeShape::UniformRandom;
  CHECK(gen_random_tree(cfg).n == 1);
}

TEST_CASE("values respect the configured ranges") {
  GenConfig cfg;
  cfg.seed = 31;
  cfg.n_min = 20;
  cfg.n_max = 30;
  cfg.cost_min = 5;
  cfg.cost_max = 9;
  cfg.pi_min = 2;
  cfg.pi_max = 2;
  cfg.rho_min = 1;
  cfg.rho_max = 3;
  Instance inst = gen_random_tree(cfg);
  CHECK(inst.n >= 20);
  CHECK(inst.n <= 30);
  for (const auto& e : inst.edges) {
    CHECK(e.cost >= 5);
    CHECK(e.cost <= 9);
  }
  for (NodeId v = 1; v <= inst.n; ++v) {
    CHECK(inst.pi[v] == 2);
    CHECK(inst.rho[v] >= 1);
    CHECK(inst.rho[v] <= 3);
  }
  cfg.n_min = 10;
  cfg.n_max = 5;
  CHECK_THROWS_AS(gen_random_tree(cfg), std::invalid_argument);
}

TEST_CASE("shape names round-trip") {
  for (TreeShape s : {TreeShape::UniformRandom, TreeShape::Path, TreeShape::Caterpillar,
                      TreeShape::Star, TreeShape::BalancedBinary}) {
    TreeShape parsed;
    REQUIRE(shape_from_name(shape_name(s), parsed));
    CHECK(parsed == s);
  }
  TreeShape unused;
  CHECK(!shape_from_name("triangle", unused));
}

TEST_CASE("the suite passes on the real engine") {
  SuiteConfig cfg;
  cfg.seed = 99;
  cfg.nmax = 60;
  EquivalenceReport report = run_equivalence_suite(cfg, 25);
  CHECK(report.trials == 25);
  CHECK(report.failures.empty());
  CHECK(report.lines.size() == 100);  // four checks per trial
  std::string text = render_report(report);
  CHECK(text.find("25 trials, 0 failures") != std::string::npos);
  CHECK(text.find(",penalty,pass") != std::string::npos);
}

TEST_CASE("zero trials yield an empty report") {
  SuiteConfig cfg;
  EquivalenceReport report = run_equivalence_suite(cfg, 0);
  CHECK(report.lines.empty());
  CHECK(report.ok());
}

TEST_CASE("an injected fault is detected and reported with a reproducer") {
  SuiteConfig cfg;
  cfg.seed = 7;
  cfg.nmax = 40;
  cfg.engine = [](const Bitree& b, CoverageMode mode) {
    // Off-by-one in the tie rule: flips the coverage comparison.
    return compute_all_penalties(b, mode == CoverageMode::Weak ? CoverageMode::Strict
                                                               : CoverageMode::Weak);
  };
  EquivalenceReport report = run_equivalence_suite(cfg, 10);
  CHECK(!report.failures.empty());
  for (const auto& f : report.failures) {
    CHECK(f.check == "penalty");
    CHECK(!f.instance_text.empty());
    // The reproducer refails deterministically.
    Instance inst = parse_instance(f.instance_text);
    NormalizedTree norm = normalize_degree(inst, 1);
    const Bitree bitrees[] = {build_symmetric(norm), build_descendant(norm),
                              build_father_subdivided(norm).bitree};
    bool differs = false;
    for (const Bitree& b : bitrees)
      for (CoverageMode mode : {CoverageMode::Weak, CoverageMode::Strict})
        differs = differs || cfg.engine(b, mode) != naive_penalties(b, mode);
    CHECK(differs);
  }

  EquivalenceReport again = run_equivalence_suite(cfg, 10);
  CHECK(again.failures.size() == report.failures.size());
}

TEST_CASE("a check filter restricts the suite") {
  SuiteConfig cfg;
  cfg.seed = 11;
  cfg.only_check = "hardness";
  EquivalenceReport report = run_equivalence_suite(cfg, 5);
  CHECK(report.lines.size() == 5);
  for (const auto& line : report.lines) CHECK(line.check == "hardness");
}
