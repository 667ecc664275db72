#ifndef BISOLVE_H
#define BISOLVE_H

/* Generated with cbindgen:0.26.0 */

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsSolver {
  BS_SOLVER_GRID = 0,
  BS_SOLVER_MRUR = 1,
  BS_SOLVER_GRUR = 2,
} BsSolver;

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_PARSE_ERROR = 1,
  /**
   * A mathematical precondition failed (common factor, genericity, square factor).
   */
  BS_STATUS_PRECONDITION = 2,
  BS_STATUS_INTERNAL = 3,
  BS_STATUS_NULL_POINTER = 4,
  BS_STATUS_INVALID_ARGUMENT = 5,
} BsStatus;

/**
 * Parsed bivariate polynomial in `x` and `y`.
 */
typedef struct BsPoly BsPoly;

/**
 * Real solutions of a system, ordered by abscissa then ordinate.
 */
typedef struct BsSolutions BsSolutions;

/**
 * Topology graph of a curve.
 */
typedef struct BsTopology BsTopology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. Valid until the next
 * failing call on the same thread.
 */
const char *bs_last_error_message(void);

/**
 * Parses a polynomial such as `x^2 + y^2 - 1`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BsStatus bs_poly_parse(const char *text, struct BsPoly **out);

/**
 * # Safety
 * `p` must come from [`bs_poly_parse`] and not be used afterwards; null is ignored.
 */
void bs_poly_free(struct BsPoly *p);

/**
 * Canonical text of a polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum BsStatus bs_poly_to_string(const struct BsPoly *p, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards; null is ignored.
 */
void bs_string_free(char *s);

/**
 * Real solutions of `f = g = 0`. With `with_multiplicity` each solution also carries its
 * intersection multiplicity.
 *
 * # Safety
 * `f` and `g` must be live handles and `out` a valid pointer.
 */
enum BsStatus bs_solve(const struct BsPoly *f,
                       const struct BsPoly *g,
                       enum BsSolver solver,
                       bool use_filter,
                       bool with_multiplicity,
                       struct BsSolutions **out);

/**
 * Number of solutions; 0 for null.
 *
 * # Safety
 * `s` must be a live handle or null.
 */
size_t bs_solutions_len(const struct BsSolutions *s);

/**
 * Floating-point approximation of solution `index`, accurate to about `2^-40`.
 *
 * # Safety
 * `s` must be a live handle; `x` and `y` valid pointers.
 */
enum BsStatus bs_solution_approx(const struct BsSolutions *s, size_t index, double *x, double *y);

/**
 * Intersection multiplicity of solution `index`; `InvalidArgument` when the solutions were
 * computed without multiplicities.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum BsStatus bs_solution_multiplicity(const struct BsSolutions *s, size_t index, uint32_t *out);

/**
 * Text line `root: x in [a, b] by ...; y in [c, d] by ...` with intervals of width at
 * most `2^-width_log2`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum BsStatus bs_solution_to_string(const struct BsSolutions *s,
                                    size_t index,
                                    uint32_t width_log2,
                                    char **out);

/**
 * # Safety
 * `s` must come from [`bs_solve`] and not be used afterwards; null is ignored.
 */
void bs_solutions_free(struct BsSolutions *s);

/**
 * Topology graph of the curve `f = 0`.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum BsStatus bs_topology(const struct BsPoly *f, struct BsTopology **out);

/**
 * # Safety
 * `t` must be a live handle or null.
 */
size_t bs_topology_vertex_count(const struct BsTopology *t);

/**
 * # Safety
 * `t` must be a live handle or null.
 */
size_t bs_topology_edge_count(const struct BsTopology *t);

/**
 * Independent cycles of the graph.
 *
 * # Safety
 * `t` must be a live handle or null.
 */
size_t bs_topology_cycle_count(const struct BsTopology *t);

/**
 * Endpoints of edge `index`.
 *
 * # Safety
 * `t` must be a live handle; `u` and `v` valid pointers.
 */
enum BsStatus bs_topology_edge(const struct BsTopology *t, size_t index, size_t *u, size_t *v);

/**
 * Graphviz text of the graph.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum BsStatus bs_topology_to_dot(const struct BsTopology *t, char **out);

/**
 * # Safety
 * `t` must come from [`bs_topology`] and not be used afterwards; null is ignored.
 */
void bs_topology_free(struct BsTopology *t);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BISOLVE_H */
