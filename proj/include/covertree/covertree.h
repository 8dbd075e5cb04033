/* covertree C API: tree facility-location solvers behind opaque handles.
 *
 * Every function returns a covertree_status; on failure a thread-local
 * message is available via covertree_last_error().  Handles are created by
 * the library and released with the matching _free function.  Strings
 * returned through char** outputs are released with covertree_string_free.
 */
#ifndef COVERTREE_H
#define COVERTREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COVERTREE_API __declspec(dllexport)
#else
#define COVERTREE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covertree_status {
  COVERTREE_OK = 0,
  COVERTREE_ERR_PARSE = 1,      /* malformed or invalid input data */
  COVERTREE_ERR_ARGUMENT = 2,   /* bad argument (null handle, bad id, ...) */
  COVERTREE_ERR_LIMIT = 3,      /* size cap exceeded (oracle routines) */
  COVERTREE_ERR_INTERNAL = 4    /* internal invariant violation */
} covertree_status;

typedef enum covertree_mode {
  COVERTREE_MODE_WEAK = 0,   /* distance <= radius covers */
  COVERTREE_MODE_STRICT = 1  /* distance <  radius covers */
} covertree_mode;

typedef enum covertree_format {
  COVERTREE_FORMAT_TEXT = 0,       /* canonical line-based format */
  COVERTREE_FORMAT_STRUCTURED = 1  /* JSON document with n/edges/nodes */
} covertree_format;

typedef enum covertree_construction {
  COVERTREE_CONSTRUCTION_SYMMETRIC = 0,
  COVERTREE_CONSTRUCTION_DESCENDANT = 1,
  COVERTREE_CONSTRUCTION_FATHER = 2
} covertree_construction;

typedef enum covertree_shape {
  COVERTREE_SHAPE_UNIFORM_RANDOM = 0,
  COVERTREE_SHAPE_PATH = 1,
  COVERTREE_SHAPE_CATERPILLAR = 2,
  COVERTREE_SHAPE_STAR = 3,
  COVERTREE_SHAPE_BALANCED_BINARY = 4
} covertree_shape;

typedef struct covertree_instance covertree_instance;
typedef struct covertree_solution covertree_solution;

COVERTREE_API const char* covertree_version(void);

/* Message describing the most recent failure on this thread. */
COVERTREE_API const char* covertree_last_error(void);

COVERTREE_API void covertree_string_free(char* text);

/* ---- instances ---------------------------------------------------------- */

COVERTREE_API covertree_status covertree_instance_parse(const char* text, size_t length,
                                                        covertree_format format,
                                                        covertree_instance** out);
COVERTREE_API void covertree_instance_free(covertree_instance* inst);
COVERTREE_API int32_t covertree_instance_node_count(const covertree_instance* inst);
COVERTREE_API int64_t covertree_instance_scale(const covertree_instance* inst);
COVERTREE_API covertree_status covertree_instance_serialize(const covertree_instance* inst,
                                                            covertree_format format,
                                                            char** out_text);

/* ---- solvers ------------------------------------------------------------ */

COVERTREE_API covertree_status covertree_solve_indirect(const covertree_instance* inst,
                                                        covertree_mode mode,
                                                        covertree_solution** out);
COVERTREE_API covertree_status covertree_solve_direct(const covertree_instance* inst,
                                                      covertree_solution** out);

COVERTREE_API void covertree_solution_free(covertree_solution* sol);
COVERTREE_API int64_t covertree_solution_total(const covertree_solution* sol);
COVERTREE_API int64_t covertree_solution_setup(const covertree_solution* sol);
COVERTREE_API int64_t covertree_solution_penalty(const covertree_solution* sol);
COVERTREE_API size_t covertree_solution_node_count(const covertree_solution* sol);
/* Fills `out` with node ids; `capacity` entries are available. Returns the
 * number written. */
COVERTREE_API size_t covertree_solution_nodes(const covertree_solution* sol, int32_t* out,
                                              size_t capacity);
COVERTREE_API size_t covertree_solution_edge_count(const covertree_solution* sol);
/* Fills `out` with 2*edge_count ids (a,b pairs). Returns edges written. */
COVERTREE_API size_t covertree_solution_edges(const covertree_solution* sol, int32_t* out,
                                              size_t capacity_pairs);

/* Best single-node facility: argmin p(v), ties to the smallest id. */
COVERTREE_API covertree_status covertree_max_coverage(const covertree_instance* inst,
                                                      covertree_mode mode, int32_t* node,
                                                      int64_t* penalty, int64_t* covered);

/* (1,X)-medianoid: weights are the instance's pi column. */
COVERTREE_API covertree_status covertree_medianoid(const covertree_instance* inst,
                                                   const int32_t* x_ids, size_t x_count,
                                                   int32_t* node, int64_t* captured);

/* p'(v) for every node under the chosen bitree construction; `out` must hold
 * node_count entries (out[0] corresponds to node 1).  SYMMETRIC gives the
 * all-customers penalty p(v), DESCENDANT the own-branch penalty, and FATHER
 * the penalty of v's branch measured at its father (reported for v; the
 * root reports its descendant value). */
COVERTREE_API covertree_status covertree_penalty_vector(const covertree_instance* inst,
                                                        covertree_construction construction,
                                                        int32_t root, covertree_mode mode,
                                                        int64_t* out);

/* ---- generators --------------------------------------------------------- */

COVERTREE_API covertree_status covertree_generate_random(uint64_t seed, int32_t n,
                                                         covertree_shape shape, int64_t cost_min,
                                                         int64_t cost_max, int64_t pi_min,
                                                         int64_t pi_max, int64_t rho_min,
                                                         int64_t rho_max,
                                                         covertree_instance** out);

/* The adversarial W_n instance for the given tuple; xs must be strictly
 * increasing and all values positive. */
COVERTREE_API covertree_status covertree_generate_wn(const int64_t* xs, const int64_t* ys,
                                                     size_t n, covertree_instance** out);

/* 1 iff xs is strictly increasing and disjoint from ys, decided through the
 * solver on the derived instance. */
COVERTREE_API covertree_status covertree_wn_is_member(const int64_t* xs, const int64_t* ys,
                                                      size_t n, int* member);

/* ---- harnesses ---------------------------------------------------------- */

COVERTREE_API covertree_status covertree_bench_penalties(int32_t n,
                                                         covertree_construction construction,
                                                         int reps, uint64_t seed,
                                                         int64_t* median_ns, uint64_t* touches);

/* Runs the oracle-agreement suite. `inject_fault` != 0 swaps coverage modes
 * in the fast path so the harness itself can be exercised. `only_check`
 * restricts the run to one of "penalty", "solve", "medianoid", "hardness"
 * (NULL or "" = all). The rendered report is returned via `report` when
 * non-null. */
COVERTREE_API covertree_status covertree_check_equivalence(uint64_t seed, int trials, int nmax,
                                                           int inject_fault,
                                                           const char* only_check, int* failures,
                                                           char** report);

#ifdef __cplusplus
}
#endif

#endif /* COVERTREE_H */
