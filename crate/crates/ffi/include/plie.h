#ifndef PLIE_H
#define PLIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Variant code of the strict theory.
 */
#define PLIE_VARIANT_DELTA 0

/**
 * Variant code of the spectral theory.
 */
#define PLIE_VARIANT_EINFTY 1

/**
 * Result codes of every fallible call.
 */
typedef enum PlieStatus {
  PLIE_STATUS_OK = 0,
  PLIE_STATUS_NULL_POINTER = 1,
  PLIE_STATUS_INVALID_ARGUMENT = 2,
  PLIE_STATUS_NOT_PRIME = 3,
  PLIE_STATUS_WINDOW_REQUIRED = 4,
  PLIE_STATUS_GUARD_EXCEEDED = 5,
  PLIE_STATUS_OUT_OF_RANGE = 6,
  PLIE_STATUS_INTERNAL = 7,
} PlieStatus;

/**
 * Opaque query handle.
 */
typedef struct PlieQuery PlieQuery;

/**
 * Opaque result handle.
 */
typedef struct PlieResult PlieResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *plie_last_error(void);

/**
 * Library version as a static string.
 */
const char *plie_version(void);

/**
 * Build a query. `gens` points to `n_gens` generator degrees.
 *
 * # Safety
 * `gens` must be valid for `n_gens` reads and `out` for one write.
 */
enum PlieStatus plie_query_new(uint64_t p,
                               uint32_t variant,
                               const int64_t *gens,
                               size_t n_gens,
                               uint64_t max_total_weight,
                               int64_t window_lo,
                               int64_t window_hi,
                               bool basis,
                               struct PlieQuery **out);

/**
 * Build a query from JSON with the fields
 * `p, gens, variant, max_total_weight, window: {lo, hi}, basis`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for one write.
 */
enum PlieStatus plie_query_from_json(const char *json, struct PlieQuery **out);

/**
 * Set the ceiling on partition-complex sizes for this query.
 *
 * # Safety
 * `q` must come from `plie_query_new` or `plie_query_from_json`.
 */
enum PlieStatus plie_query_set_guard_n(struct PlieQuery *q, size_t n);

/**
 * # Safety
 * `q` must be null or a handle not yet freed.
 */
void plie_query_free(struct PlieQuery *q);

/**
 * Run the query.
 *
 * # Safety
 * `q` must be a live query handle and `out` valid for one write.
 */
enum PlieStatus plie_compute(const struct PlieQuery *q, struct PlieResult **out);

/**
 * Number of nonzero (weight, degree) entries.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t plie_result_len(const struct PlieResult *r);

/**
 * Degree, dimension and total weight of entry `index`, in output order
 * (total weight, then degree).
 *
 * # Safety
 * `r` must be a live result handle; the out pointers must be valid or null.
 */
enum PlieStatus plie_result_entry(const struct PlieResult *r,
                                  size_t index,
                                  int64_t *degree,
                                  uint64_t *dim,
                                  uint64_t *total_weight);

/**
 * Copy the weight vector of entry `index` into `buf` (capacity `cap`);
 * `*len` receives its full length, so a short buffer can be retried.
 *
 * # Safety
 * `buf` must be valid for `cap` writes and `len` for one write.
 */
enum PlieStatus plie_result_weight(const struct PlieResult *r,
                                   size_t index,
                                   uint64_t *buf,
                                   size_t cap,
                                   size_t *len);

/**
 * The whole result as JSON (the CLI's schema). Release with `plie_string_free`.
 *
 * # Safety
 * `r` must be a live result handle and `out` valid for one write.
 */
enum PlieStatus plie_result_to_json(const struct PlieResult *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void plie_result_free(struct PlieResult *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void plie_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLIE_H */
