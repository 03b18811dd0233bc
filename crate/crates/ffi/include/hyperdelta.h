#ifndef HYPERDELTA_H
#define HYPERDELTA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum HdStatus {
  HD_STATUS_OK = 0,
  /*
   The search finished without a witness, or a verification was refuted.
   */
  HD_STATUS_NOT_FOUND = 1,
  /*
   The node budget ran out before the search finished.
   */
  HD_STATUS_BUDGET_EXHAUSTED = 2,
  HD_STATUS_INVALID_INPUT = 3,
  HD_STATUS_NULL_POINTER = 4,
  HD_STATUS_INTERNAL = 5,
} HdStatus;

/*
 Verification strategy for [`hd_verify_counterexample`].
 */
typedef enum HdVerifyMode {
  HD_VERIFY_MODE_DEGREE_ARGUMENT = 0,
  HD_VERIFY_MODE_EXHAUSTIVE = 1,
  HD_VERIFY_MODE_BOTH = 2,
} HdVerifyMode;

/*
 Opaque uniform hypergraph.
 */
typedef struct HdHypergraph HdHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the most recent failure on this thread, or an empty string.
 The pointer stays valid until the next library call on this thread.
 */
const char *hd_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void hd_string_free(char *s);

/*
 Parses the text format: a `n k` header line, then one edge per line.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HdStatus hd_hypergraph_parse(const char *text, struct HdHypergraph **out);

/*
 Builds a `k`-graph on `[n]` from `edge_count * k` 1-based vertices laid
 out edge after edge.

 # Safety
 `vertices` must point to `edge_count * k` readable values; `out` must be writable.
 */
enum HdStatus hd_hypergraph_new(size_t n,
                                size_t k,
                                const uint32_t *vertices,
                                size_t edge_count,
                                struct HdHypergraph **out);

/*
 Releases a hypergraph. Null is ignored.

 # Safety
 `h` must come from this library and not have been freed.
 */
void hd_hypergraph_free(struct HdHypergraph *h);

/*
 Vertex count; 0 for null.

 # Safety
 `h` must be null or a live handle.
 */
size_t hd_hypergraph_n(const struct HdHypergraph *h);

/*
 Uniformity; 0 for null.

 # Safety
 `h` must be null or a live handle.
 */
size_t hd_hypergraph_k(const struct HdHypergraph *h);

/*
 Edge count; 0 for null.

 # Safety
 `h` must be null or a live handle.
 */
size_t hd_hypergraph_edge_count(const struct HdHypergraph *h);

/*
 Copies the `index`-th edge (lexicographic order) into `out`, which must
 hold `k` values.

 # Safety
 `h` must be a live handle; `out` must have room for `k` values.
 */
enum HdStatus hd_hypergraph_edge(const struct HdHypergraph *h, size_t index, uint32_t *out);

/*
 Text-format serialisation.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_hypergraph_serialize(const struct HdHypergraph *h, char **out);

/*
 Number of distinct `(k - level)`-subsets of edges.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_shadow_size(const struct HdHypergraph *h, size_t level, size_t *out);

/*
 Number of edges containing the given vertex set.

 # Safety
 `h` must be a live handle; `vertices` must hold `len` values; `out` must be writable.
 */
enum HdStatus hd_codegree(const struct HdHypergraph *h,
                          const uint32_t *vertices,
                          size_t len,
                          size_t *out);

/*
 Largest pair codegree of a 3-graph.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_max_codegree2(const struct HdHypergraph *h, size_t *out);

/*
 Sum of edge weights as an exact rational string such as `"17/2"`.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_total_weight(const struct HdHypergraph *h, char **out);

/*
 `s` edges pairwise meeting exactly in `center`. Writes the witness JSON,
 or `null` with [`HdStatus::NotFound`].

 # Safety
 `h` must be a live handle; `center` must hold `center_len` values; `out` must be writable.
 */
enum HdStatus hd_find_sunflower(const struct HdHypergraph *h,
                                const uint32_t *center,
                                size_t center_len,
                                size_t s,
                                char **out);

/*
 Searches for an `(a, d)`-Δ-system. `budget_nodes` is a node limit, 0 for the default.

 # Safety
 `h` must be a live handle; `a` must hold `a_len` values; `out` must be writable.
 */
enum HdStatus hd_find_avd(const struct HdHypergraph *h,
                          const size_t *a,
                          size_t a_len,
                          size_t d,
                          uint64_t budget_nodes,
                          char **out);

/*
 Searches for `t` edges forming a non-trivial `d`-wise intersecting family.
 `budget_nodes` is a node limit, 0 for the default.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_find_nontrivial(const struct HdHypergraph *h,
                                 size_t t,
                                 size_t d,
                                 uint64_t budget_nodes,
                                 char **out);

/*
 All `k`-sets of `[n]` containing vertex 1.

 # Safety
 `out` must be writable.
 */
enum HdStatus hd_build_star(size_t n, size_t k, struct HdHypergraph **out);

/*
 A simple triple system on `[n]` covering every pair exactly `lambda` times.

 # Safety
 `out` must be writable.
 */
enum HdStatus hd_build_triple_system(size_t n,
                                     size_t lambda,
                                     uint64_t seed,
                                     struct HdHypergraph **out);

/*
 Design with `lambda = m - 1` plus a perfect matching of its complement.

 # Safety
 `out` must be writable.
 */
enum HdStatus hd_build_counterexample(size_t n, size_t m, uint64_t seed, struct HdHypergraph **out);

/*
 Checks that no `3m + 1` edges form a non-trivial intersecting family and
 writes the report JSON. Verified maps to [`HdStatus::Ok`], refuted to
 [`HdStatus::NotFound`], conditional or inconclusive to
 [`HdStatus::BudgetExhausted`].

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HdStatus hd_verify_counterexample(const struct HdHypergraph *h,
                                       size_t m,
                                       enum HdVerifyMode mode,
                                       uint64_t budget_nodes,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERDELTA_H */
