#pragma once

#include <functional>
#include <string>

#include "covertree/generator.hpp"
#include "covertree/hardness.hpp"

namespace covertree {

/// One machine-readable line of the equivalence report.
struct CheckLine {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string check;
  bool pass = true;
};

struct CheckFailure {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string check;
  std::string detail;
  std::string instance_text;  // self-contained reproducer
};

struct EquivalenceReport {
  int trials = 0;
  std::vector<CheckLine> lines;
  std::vector<CheckFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Replaceable fast path, used by tests to inject deliberate faults and
/// confirm the harness reports them.
using EngineFn = std::function<PenaltyVector(const Bitree&, CoverageMode)>;

struct SuiteConfig {
  std::uint64_t seed = 1;
  int nmax = 200;          // size cap for the penalty and medianoid checks
  EngineFn engine;         // empty = compute_all_penalties
  std::string only_check;  // empty = all of penalty, solve, medianoid, hardness
};

/// Runs, per trial, the four oracle agreements: penalty engine vs. the
/// quadratic oracle (three constructions, both modes), indirect solve vs.
/// exhaustive enumeration, medianoid vs. its oracle, and the W_n tri-oracle.
/// Failures carry a reproducer (seed plus serialized instance).
EquivalenceReport run_equivalence_suite(const SuiteConfig& cfg, int trials);

/// Human-readable summary followed by "trial,seed,check,status" lines.
std::string render_report(const EquivalenceReport& report);

}  // namespace covertree
