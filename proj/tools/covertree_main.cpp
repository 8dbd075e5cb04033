// covertree: solve indirect covering subtree, single maximum coverage and
// (1,X)-medianoid problems on trees; generate instances; run the oracle
// check suite and the scaling benchmark.
//
// Exit codes: 0 success, 1 internal invariant or check failure, 2 bad input.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "covertree/covertree.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

int status_exit(covertree_status status) {
  switch (status) {
    case COVERTREE_OK: return kExitOk;
    case COVERTREE_ERR_INTERNAL: return kExitInternal;
    default: return kExitUsage;
  }
}

int report_error(covertree_status status) {
  std::cerr << "error: " << covertree_last_error() << "\n";
  return status_exit(status);
}

covertree_format parse_format(const std::string& name) {
  return name == "structured" ? COVERTREE_FORMAT_STRUCTURED : COVERTREE_FORMAT_TEXT;
}

covertree_mode parse_mode(const std::string& name) {
  return name == "strict" ? COVERTREE_MODE_STRICT : COVERTREE_MODE_WEAK;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

struct InstanceHandle {
  covertree_instance* ptr = nullptr;
  ~InstanceHandle() { covertree_instance_free(ptr); }
};

struct SolutionHandle {
  covertree_solution* ptr = nullptr;
  ~SolutionHandle() { covertree_solution_free(ptr); }
};

int load_instance(const std::string& path, const std::string& format, InstanceHandle& handle) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitUsage;
  }
  covertree_status status =
      covertree_instance_parse(text.data(), text.size(), parse_format(format), &handle.ptr);
  if (status != COVERTREE_OK) return report_error(status);
  return kExitOk;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  // COVERTREE_SEED wins over --seed when set.
  if (const char* env = std::getenv("COVERTREE_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    std::cerr << "warning: ignoring non-numeric COVERTREE_SEED\n";
  }
  return cli_seed;
}

void collect_witness(const covertree_solution* sol, std::vector<std::int32_t>& nodes,
                     std::vector<std::int32_t>& edge_pairs) {
  nodes.resize(covertree_solution_node_count(sol));
  covertree_solution_nodes(sol, nodes.data(), nodes.size());
  edge_pairs.resize(2 * covertree_solution_edge_count(sol));
  covertree_solution_edges(sol, edge_pairs.data(), covertree_solution_edge_count(sol));
}

int print_solution(const covertree_instance* inst, const covertree_solution* sol, bool witness,
                   bool as_json, const std::string& mode) {
  std::vector<std::int32_t> nodes, edge_pairs;
  collect_witness(sol, nodes, edge_pairs);
  std::int64_t scale = covertree_instance_scale(inst);

  if (as_json) {
    nlohmann::json doc;
    doc["total"] = covertree_solution_total(sol);
    doc["setup"] = covertree_solution_setup(sol);
    doc["penalty"] = covertree_solution_penalty(sol);
    doc["scale"] = scale;
    doc["mode"] = mode;
    doc["witness"]["nodes"] = nodes;
    auto& edges = doc["witness"]["edges"] = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < edge_pairs.size(); i += 2)
      edges.push_back({edge_pairs[i], edge_pairs[i + 1]});
    std::cout << doc.dump() << "\n";
    return kExitOk;
  }

  std::cout << "total=" << covertree_solution_total(sol)
            << " setup=" << covertree_solution_setup(sol)
            << " penalty=" << covertree_solution_penalty(sol) << "\n";
  if (scale != 1) std::cout << "scale=" << scale << "\n";
  if (witness) {
    std::cout << "nodes=[";
    for (std::size_t i = 0; i < nodes.size(); ++i) std::cout << (i ? "," : "") << nodes[i];
    std::cout << "]\nedges=[";
    for (std::size_t i = 0; i + 1 < edge_pairs.size(); i += 2)
      std::cout << (i ? "," : "") << "(" << edge_pairs[i] << "," << edge_pairs[i + 1] << ")";
    std::cout << "]\n";
  }
  return kExitOk;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

int emit_instance(covertree_instance* inst, const std::string& format, const std::string& path) {
  char* text = nullptr;
  covertree_status status = covertree_instance_serialize(inst, parse_format(format), &text);
  if (status != COVERTREE_OK) return report_error(status);
  std::string owned(text);
  covertree_string_free(text);
  if (parse_format(format) == COVERTREE_FORMAT_STRUCTURED) owned += "\n";
  return write_output(owned, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree facility location: covering subtrees, max coverage, medianoid"};
  app.require_subcommand(1);

  std::string file, format = "text", mode = "weak", out_path, csv_path, shape = "uniform-random";
  bool witness = false, as_json = false, inject_fault = false;
  std::uint64_t seed = 1;
  std::int32_t gen_n = 10;
  std::int64_t cost_min = 0, cost_max = 20, pi_min = 0, pi_max = 10, rho_min = 0, rho_max = 40;
  std::vector<std::int64_t> xs, ys, sizes;
  std::vector<std::int32_t> x_set;
  int reps = 3, trials = 100, nmax = 60;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "instance file")->required();
    cmd->add_option("--format", format, "input format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "optimal covering subtree");
  add_input(solve);
  solve->add_option("--mode", mode, "coverage mode: weak|strict")
      ->check(CLI::IsMember({"weak", "strict"}));
  solve->add_flag("--witness", witness, "print the facility node and edge lists");
  solve->add_flag("--json", as_json, "emit one JSON document");

  CLI::App* maxcov = app.add_subcommand("maxcov", "best single-node facility");
  add_input(maxcov);
  maxcov->add_option("--mode", mode)->check(CLI::IsMember({"weak", "strict"}));
  maxcov->add_flag("--json", as_json);

  CLI::App* medianoid = app.add_subcommand("medianoid", "best reply to competitors X");
  add_input(medianoid);
  medianoid->add_option("--x", x_set, "competitor node ids (comma separated)")
      ->required()
      ->delimiter(',');
  medianoid->add_flag("--json", as_json);

  CLI::App* direct = app.add_subcommand("direct", "direct covering subtree (radius zero)");
  add_input(direct);
  direct->add_flag("--witness", witness);
  direct->add_flag("--json", as_json);

  CLI::App* gen = app.add_subcommand("gen", "emit instances");
  gen->require_subcommand(1);
  CLI::App* gen_random = gen->add_subcommand("random", "seeded random tree");
  gen_random->add_option("--n", gen_n, "node count")->check(CLI::PositiveNumber);
  gen_random->add_option("--seed", seed, "generator seed");
  gen_random->add_option("--shape", shape, "tree shape")
      ->check(CLI::IsMember({"uniform-random", "path", "caterpillar", "star", "balanced-binary"}));
  gen_random->add_option("--cost-min", cost_min);
  gen_random->add_option("--cost-max", cost_max);
  gen_random->add_option("--pi-min", pi_min);
  gen_random->add_option("--pi-max", pi_max);
  gen_random->add_option("--rho-min", rho_min);
  gen_random->add_option("--rho-max", rho_max);
  gen_random->add_option("-o,--out", out_path, "output file (default stdout)");
  gen_random->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  CLI::App* gen_wn = gen->add_subcommand("wn", "interleaving/disjointness hardness instance");
  gen_wn->add_option("--xs", xs, "strictly increasing positive integers")
      ->required()
      ->delimiter(',');
  gen_wn->add_option("--ys", ys, "positive integers, same length as --xs")
      ->required()
      ->delimiter(',');
  gen_wn->add_option("-o,--out", out_path);
  gen_wn->add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));

  CLI::App* bench = app.add_subcommand("bench", "time the penalty engine per construction");
  bench->add_option("--sizes", sizes, "node counts (comma separated)")->delimiter(',');
  bench->add_option("--reps", reps, "repetitions per measurement (>= 3)");
  bench->add_option("--seed", seed);
  bench->add_option("--csv", csv_path, "write CSV here instead of stdout");

  CLI::App* check = app.add_subcommand("check", "oracle agreement suite");
  std::string check_scope;
  check->add_option("scope", check_scope, "restrict to one family: wn")
      ->check(CLI::IsMember({"wn"}));
  check->add_option("--trials", trials);
  check->add_option("--seed", seed);
  check->add_option("--nmax", nmax, "instance size cap");
  check->add_flag("--inject-fault", inject_fault,
                  "swap coverage modes in the fast path to exercise the harness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*solve || *direct) {
    InstanceHandle inst;
    if (int rc = load_instance(file, format, inst); rc != kExitOk) return rc;
    SolutionHandle sol;
    covertree_status status =
        *solve ? covertree_solve_indirect(inst.ptr, parse_mode(mode), &sol.ptr)
               : covertree_solve_direct(inst.ptr, &sol.ptr);
    if (status != COVERTREE_OK) return report_error(status);
    return print_solution(inst.ptr, sol.ptr, witness, as_json, *direct ? "weak" : mode);
  }

  if (*maxcov) {
    InstanceHandle inst;
    if (int rc = load_instance(file, format, inst); rc != kExitOk) return rc;
    std::int32_t node = 0;
    std::int64_t penalty = 0, covered = 0;
    covertree_status status =
        covertree_max_coverage(inst.ptr, parse_mode(mode), &node, &penalty, &covered);
    if (status != COVERTREE_OK) return report_error(status);
    std::int64_t scale = covertree_instance_scale(inst.ptr);
    if (as_json) {
      nlohmann::json doc{{"node", node}, {"penalty", penalty}, {"covered", covered},
                         {"scale", scale}, {"mode", mode}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "node=" << node << " penalty=" << penalty << " covered=" << covered << "\n";
      if (scale != 1) std::cout << "scale=" << scale << "\n";
    }
    return kExitOk;
  }

  if (*medianoid) {
    InstanceHandle inst;
    if (int rc = load_instance(file, format, inst); rc != kExitOk) return rc;
    if (x_set.empty()) {
      std::cerr << "error: --x must list at least one node\n";
      return kExitUsage;
    }
    std::int32_t node = 0;
    std::int64_t captured = 0;
    covertree_status status =
        covertree_medianoid(inst.ptr, x_set.data(), x_set.size(), &node, &captured);
    if (status != COVERTREE_OK) return report_error(status);
    if (as_json) {
      nlohmann::json doc{{"node", node}, {"captured", captured},
                         {"scale", covertree_instance_scale(inst.ptr)}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "node=" << node << " captured=" << captured << "\n";
    }
    return kExitOk;
  }

  if (*gen_random) {
    covertree_shape shape_id = COVERTREE_SHAPE_UNIFORM_RANDOM;
    if (shape == "path") shape_id = COVERTREE_SHAPE_PATH;
    if (shape == "caterpillar") shape_id = COVERTREE_SHAPE_CATERPILLAR;
    if (shape == "star") shape_id = COVERTREE_SHAPE_STAR;
    if (shape == "balanced-binary") shape_id = COVERTREE_SHAPE_BALANCED_BINARY;
    InstanceHandle inst;
    covertree_status status =
        covertree_generate_random(effective_seed(seed), gen_n, shape_id, cost_min, cost_max,
                                  pi_min, pi_max, rho_min, rho_max, &inst.ptr);
    if (status != COVERTREE_OK) return report_error(status);
    return emit_instance(inst.ptr, format, out_path);
  }

  if (*gen_wn) {
    if (xs.size() != ys.size()) {
      std::cerr << "error: --xs and --ys must have the same length\n";
      return kExitUsage;
    }
    InstanceHandle inst;
    covertree_status status = covertree_generate_wn(xs.data(), ys.data(), xs.size(), &inst.ptr);
    if (status != COVERTREE_OK) return report_error(status);
    return emit_instance(inst.ptr, format, out_path);
  }

  if (*bench) {
    if (sizes.empty()) sizes = {8192, 16384, 32768, 65536, 131072};
    std::uint64_t s = effective_seed(seed);
    std::ostringstream csv;
    csv << "n,construction,median_ns,reps,seed\n";
    const covertree_construction constructions[] = {COVERTREE_CONSTRUCTION_SYMMETRIC,
                                                    COVERTREE_CONSTRUCTION_DESCENDANT,
                                                    COVERTREE_CONSTRUCTION_FATHER};
    const char* names[] = {"symmetric", "descendant", "father"};
    for (std::int64_t n : sizes) {
      if (n < 2) {
        std::cerr << "error: sizes must be >= 2\n";
        return kExitUsage;
      }
      for (int c = 0; c < 3; ++c) {
        std::int64_t median_ns = 0;
        std::uint64_t touches = 0;
        covertree_status status = covertree_bench_penalties(
            static_cast<std::int32_t>(n), constructions[c], reps, s, &median_ns, &touches);
        if (status != COVERTREE_OK) return report_error(status);
        csv << n << ',' << names[c] << ',' << median_ns << ',' << (reps < 3 ? 3 : reps) << ','
            << s << '\n';
      }
    }
    return write_output(csv.str(), csv_path);
  }

  if (*check) {
    int failures = 0;
    char* report = nullptr;
    const char* only = check_scope == "wn" ? "hardness" : nullptr;
    covertree_status status = covertree_check_equivalence(
        effective_seed(seed), trials, nmax, inject_fault ? 1 : 0, only, &failures, &report);
    if (status != COVERTREE_OK) return report_error(status);
    if (report != nullptr) {
      std::cout << report;
      covertree_string_free(report);
    }
    return failures == 0 ? kExitOk : kExitInternal;
  }

  return kExitUsage;
}
