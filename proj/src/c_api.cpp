#include "covertree/covertree.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "covertree/bench.hpp"
#include "covertree/covering_dp.hpp"
#include "covertree/equivalence.hpp"
#include "covertree/generator.hpp"
#include "covertree/hardness.hpp"
#include "covertree/medianoid.hpp"

using namespace covertree;

struct covertree_instance {
  Instance inst;
};

struct covertree_solution {
  Solution sol;
};

namespace {

thread_local std::string g_last_error;

covertree_status fail(covertree_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
covertree_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(COVERTREE_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(COVERTREE_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(COVERTREE_ERR_INTERNAL, e.what());
  }
}

CoverageMode to_mode(covertree_mode mode) {
  return mode == COVERTREE_MODE_STRICT ? CoverageMode::Strict : CoverageMode::Weak;
}

Format to_format(covertree_format format) {
  return format == COVERTREE_FORMAT_STRUCTURED ? Format::Structured : Format::Text;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* covertree_version(void) { return "1.0.0"; }

const char* covertree_last_error(void) { return g_last_error.c_str(); }

void covertree_string_free(char* text) { std::free(text); }

covertree_status covertree_instance_parse(const char* text, size_t length,
                                          covertree_format format, covertree_instance** out) {
  if (text == nullptr || out == nullptr)
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new covertree_instance{parse_instance({text, length}, to_format(format))};
    *out = handle;
    return COVERTREE_OK;
  });
}

void covertree_instance_free(covertree_instance* inst) { delete inst; }

int32_t covertree_instance_node_count(const covertree_instance* inst) {
  return inst == nullptr ? 0 : inst->inst.n;
}

int64_t covertree_instance_scale(const covertree_instance* inst) {
  return inst == nullptr ? 0 : inst->inst.scale;
}

covertree_status covertree_instance_serialize(const covertree_instance* inst,
                                              covertree_format format, char** out_text) {
  if (inst == nullptr || out_text == nullptr)
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = dup_string(serialize_instance(inst->inst, to_format(format)));
    return COVERTREE_OK;
  });
}

covertree_status covertree_solve_indirect(const covertree_instance* inst, covertree_mode mode,
                                          covertree_solution** out) {
  if (inst == nullptr || out == nullptr)
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new covertree_solution{solve_indirect(inst->inst, to_mode(mode))};
    return COVERTREE_OK;
  });
}

covertree_status covertree_solve_direct(const covertree_instance* inst,
                                        covertree_solution** out) {
  if (inst == nullptr || out == nullptr)
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new covertree_solution{solve_direct(inst->inst)};
    return COVERTREE_OK;
  });
}

void covertree_solution_free(covertree_solution* sol) { delete sol; }

int64_t covertree_solution_total(const covertree_solution* sol) {
  return sol == nullptr ? 0 : sol->sol.total;
}

int64_t covertree_solution_setup(const covertree_solution* sol) {
  return sol == nullptr ? 0 : sol->sol.setup;
}

int64_t covertree_solution_penalty(const covertree_solution* sol) {
  return sol == nullptr ? 0 : sol->sol.penalty;
}

size_t covertree_solution_node_count(const covertree_solution* sol) {
  return sol == nullptr ? 0 : sol->sol.nodes.size();
}

size_t covertree_solution_nodes(const covertree_solution* sol, int32_t* out, size_t capacity) {
  if (sol == nullptr || out == nullptr) return 0;
  size_t count = std::min(capacity, sol->sol.nodes.size());
  for (size_t i = 0; i < count; ++i) out[i] = sol->sol.nodes[i];
  return count;
}

size_t covertree_solution_edge_count(const covertree_solution* sol) {
  return sol == nullptr ? 0 : sol->sol.edges.size();
}

size_t covertree_solution_edges(const covertree_solution* sol, int32_t* out,
                                size_t capacity_pairs) {
  if (sol == nullptr || out == nullptr) return 0;
  size_t count = std::min(capacity_pairs, sol->sol.edges.size());
  for (size_t i = 0; i < count; ++i) {
    out[2 * i] = sol->sol.edges[i].first;
    out[2 * i + 1] = sol->sol.edges[i].second;
  }
  return count;
}

covertree_status covertree_max_coverage(const covertree_instance* inst, covertree_mode mode,
                                        int32_t* node, int64_t* penalty, int64_t* covered) {
  if (inst == nullptr) return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    MaxCovResult r = solve_single_maxcov(inst->inst, to_mode(mode));
    if (node) *node = r.node;
    if (penalty) *penalty = r.penalty;
    if (covered) *covered = r.covered;
    return COVERTREE_OK;
  });
}

covertree_status covertree_medianoid(const covertree_instance* inst, const int32_t* x_ids,
                                     size_t x_count, int32_t* node, int64_t* captured) {
  if (inst == nullptr || x_ids == nullptr || x_count == 0)
    return fail(COVERTREE_ERR_ARGUMENT, "medianoid needs a nonempty competitor set");
  return guarded([&] {
    MedianoidInstance mi;
    mi.tree = inst->inst;
    mi.x.assign(x_ids, x_ids + x_count);
    MedianoidResult r = solve_medianoid(mi);
    if (node) *node = r.node;
    if (captured) *captured = r.captured;
    return COVERTREE_OK;
  });
}

covertree_status covertree_penalty_vector(const covertree_instance* inst,
                                          covertree_construction construction, int32_t root,
                                          covertree_mode mode, int64_t* out) {
  if (inst == nullptr || out == nullptr) return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const Instance& tree = inst->inst;
    if (!tree.has_node(root)) throw std::invalid_argument("unknown root id");
    NormalizedTree norm = normalize_degree(tree, root);
    PenaltyVector p;
    switch (construction) {
      case COVERTREE_CONSTRUCTION_SYMMETRIC:
        p = compute_all_penalties(build_symmetric(norm), to_mode(mode));
        for (NodeId v = 1; v <= tree.n; ++v) out[v - 1] = p[norm.canonical(v)];
        break;
      case COVERTREE_CONSTRUCTION_DESCENDANT:
        p = compute_all_penalties(build_descendant(norm), to_mode(mode));
        for (NodeId v = 1; v <= tree.n; ++v) out[v - 1] = p[norm.canonical(v)];
        break;
      case COVERTREE_CONSTRUCTION_FATHER:
      default: {
        FatherSubdivided sub = build_father_subdivided(norm);
        p = compute_all_penalties(sub.bitree, to_mode(mode));
        PenaltyVector desc = compute_all_penalties(build_descendant(norm), to_mode(mode));
        for (NodeId v = 1; v <= tree.n; ++v) {
          NodeId copy = norm.canonical(v);
          out[v - 1] = v == root ? desc[copy] : p[sub.fprime[copy]];
        }
        break;
      }
    }
    return COVERTREE_OK;
  });
}

covertree_status covertree_generate_random(uint64_t seed, int32_t n, covertree_shape shape,
                                           int64_t cost_min, int64_t cost_max, int64_t pi_min,
                                           int64_t pi_max, int64_t rho_min, int64_t rho_max,
                                           covertree_instance** out) {
  if (out == nullptr) return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_min = cfg.n_max = n;
    cfg.cost_min = cost_min;
    cfg.cost_max = cost_max;
    cfg.pi_min = pi_min;
    cfg.pi_max = pi_max;
    cfg.rho_min = rho_min;
    cfg.rho_max = rho_max;
    cfg.shape = static_cast<TreeShape>(shape);
    *out = new covertree_instance{gen_random_tree(cfg)};
    return COVERTREE_OK;
  });
}

covertree_status covertree_generate_wn(const int64_t* xs, const int64_t* ys, size_t n,
                                       covertree_instance** out) {
  if (out == nullptr || (n > 0 && (xs == nullptr || ys == nullptr)))
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    WnTuple t;
    t.xs.assign(xs, xs + n);
    t.ys.assign(ys, ys + n);
    *out = new covertree_instance{build_wn_instance(t).instance};
    return COVERTREE_OK;
  });
}

covertree_status covertree_wn_is_member(const int64_t* xs, const int64_t* ys, size_t n,
                                        int* member) {
  if (member == nullptr || (n > 0 && (xs == nullptr || ys == nullptr)))
    return fail(COVERTREE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    WnTuple t;
    t.xs.assign(xs, xs + n);
    t.ys.assign(ys, ys + n);
    *member = decide_wn_membership(t) == WnMembership::Member ? 1 : 0;
    return COVERTREE_OK;
  });
}

covertree_status covertree_bench_penalties(int32_t n, covertree_construction construction,
                                           int reps, uint64_t seed, int64_t* median_ns,
                                           uint64_t* touches) {
  return guarded([&] {
    Construction c = construction == COVERTREE_CONSTRUCTION_SYMMETRIC ? Construction::Symmetric
                     : construction == COVERTREE_CONSTRUCTION_DESCENDANT
                         ? Construction::Descendant
                         : Construction::Father;
    NodeId sizes[] = {n};
    Construction constructions[] = {c};
    auto records = run_bench(sizes, reps, seed, constructions);
    if (median_ns) *median_ns = records[0].median_ns;
    if (touches) *touches = records[0].merge_scan_touches;
    return COVERTREE_OK;
  });
}

covertree_status covertree_check_equivalence(uint64_t seed, int trials, int nmax,
                                             int inject_fault, const char* only_check,
                                             int* failures, char** report) {
  if (trials < 0 || nmax < 1) return fail(COVERTREE_ERR_ARGUMENT, "bad trials or nmax");
  return guarded([&] {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.nmax = nmax;
    if (only_check != nullptr) cfg.only_check = only_check;
    if (inject_fault) {
      // Deliberately broken fast path: coverage modes swapped.
      cfg.engine = [](const Bitree& b, CoverageMode mode) {
        return compute_all_penalties(b, mode == CoverageMode::Weak ? CoverageMode::Strict
                                                                   : CoverageMode::Weak);
      };
    }
    EquivalenceReport rep = run_equivalence_suite(cfg, trials);
    if (failures) *failures = static_cast<int>(rep.failures.size());
    if (report) *report = dup_string(render_report(rep));
    return COVERTREE_OK;
  });
}

}  // extern "C"
