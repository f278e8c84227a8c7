/* C API for the hypergram library. Generated by cbindgen; do not edit. */

#ifndef HYPERGRAM_H
#define HYPERGRAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HgStatus {
  HgStatus_Ok = 0,
  HgStatus_NullPointer = 1,
  HgStatus_InvalidUtf8 = 2,
  HgStatus_Parse = 3,
  HgStatus_InvalidHypergram = 4,
  HgStatus_NotAssignable = 5,
  HgStatus_ThresholdExceeded = 6,
  HgStatus_Mismatch = 7,
  HgStatus_Panic = 8,
} HgStatus;

typedef enum HgMethod {
  /**
   * Exact when rank(C(H)) is within the default threshold, heuristic otherwise.
   */
  HgMethod_Auto = 0,
  HgMethod_Exact = 1,
  HgMethod_Heuristic = 2,
} HgMethod;

/**
 * Opaque Pauli assignment.
 */
typedef struct HgAssignment HgAssignment;

/**
 * Opaque validated hypergram.
 */
typedef struct HgHypergram HgHypergram;

typedef struct HgDegree {
  size_t value;
  bool exact;
  /**
   * 0 exhaustive, 1 brute force, 2 heuristic.
   */
  uint32_t method;
} HgDegree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Why the previous call on this thread failed, or NULL if it succeeded.
 * Valid until the next call into the library from this thread.
 */
const char *hg_last_error_message(void);

/**
 * Parses and validates a hypergram file body.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_hypergram_from_json(const char *json, struct HgHypergram **out);

/**
 * # Safety
 * `hg` must come from `hg_hypergram_from_json` and not be used afterwards. NULL is ignored.
 */
void hg_hypergram_free(struct HgHypergram *hg);

/**
 * # Safety
 * `hg` must be a live handle or NULL (returns 0).
 */
size_t hg_hypergram_vertex_count(const struct HgHypergram *hg);

/**
 * # Safety
 * `hg` must be a live handle or NULL (returns 0).
 */
size_t hg_hypergram_hyperedge_count(const struct HgHypergram *hg);

/**
 * Writes whether `H × G = 0`.
 *
 * # Safety
 * `hg` must be a live handle; `out` must be writable.
 */
enum HgStatus hg_hypergram_is_assignable(const struct HgHypergram *hg, bool *out);

/**
 * Builds a Pauli assignment from the anticommutation graph.
 *
 * # Safety
 * `hg` must be a live handle; `out` must be writable.
 */
enum HgStatus hg_assign(const struct HgHypergram *hg, struct HgAssignment **out);

/**
 * Parses an assignment file body.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HgStatus hg_assignment_from_json(const char *json, struct HgAssignment **out);

/**
 * # Safety
 * `alpha` must be a live handle or NULL (returns 0).
 */
size_t hg_assignment_qubits(const struct HgAssignment *alpha);

/**
 * Serializes an assignment; release the string with `hg_string_free`.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum HgStatus hg_assignment_to_json(const struct HgAssignment *alpha, char **out);

/**
 * # Safety
 * `alpha` must come from this library and not be used afterwards. NULL is ignored.
 */
void hg_assignment_free(struct HgAssignment *alpha);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void hg_string_free(char *s);

/**
 * Contextuality degree of the sign function of `alpha` on `hg`.
 *
 * `seed` only matters for the heuristic, which uses default parameters otherwise.
 *
 * # Safety
 * `hg` and `alpha` must be live handles; `out` must be writable.
 */
enum HgStatus hg_degree(const struct HgHypergram *hg,
                        const struct HgAssignment *alpha,
                        enum HgMethod method,
                        uint64_t seed,
                        struct HgDegree *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERGRAM_H */
