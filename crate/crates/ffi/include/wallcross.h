#ifndef WALLCROSS_H
#define WALLCROSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WcSide {
  WC_SIDE_ROWS = 0,
  WC_SIDE_COLUMNS = 1,
} WcSide;

typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_UTF8 = 2,
  WC_STATUS_PARSE = 3,
  WC_STATUS_DOMAIN = 4,
  WC_STATUS_RANGE = 5,
  WC_STATUS_CAPACITY = 6,
  WC_STATUS_CONVENTION = 7,
  WC_STATUS_ORACLE = 8,
  WC_STATUS_PREDICTION = 9,
  WC_STATUS_CACHE = 10,
  WC_STATUS_IO = 11,
  WC_STATUS_OUT_OF_BOUNDS = 12,
  WC_STATUS_PANIC = 13,
} WcStatus;

typedef enum WcWallSet {
  WC_WALL_SET_STRICT = 0,
  WC_WALL_SET_INCLUSIVE = 1,
} WcWallSet;

typedef struct WcEngine WcEngine;

typedef struct WcPartition WcPartition;

typedef struct WcTrajectory WcTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wc_last_error(void);

void wc_string_free(char *s);

enum WcStatus wc_partition_parse(const char *input, struct WcPartition **out);

/**
 * Builds a partition from `len` parts in any order; zeros are dropped.
 */
enum WcStatus wc_partition_from_parts(const size_t *parts, size_t len, struct WcPartition **out);

void wc_partition_free(struct WcPartition *p);

/**
 * Canonical text form, e.g. `3^8,1^5`.
 */
enum WcStatus wc_partition_format(const struct WcPartition *p, char **out);

/**
 * Number of boxes; 0 for a null handle.
 */
size_t wc_partition_size(const struct WcPartition *p);

/**
 * Number of nonzero parts; 0 for a null handle.
 */
size_t wc_partition_len(const struct WcPartition *p);

/**
 * Copies up to `cap` parts into `buf` (non-increasing) and stores the full
 * length in `out_len`. `OutOfBounds` if `cap` is too small.
 */
enum WcStatus wc_partition_parts(const struct WcPartition *p,
                                 size_t *buf,
                                 size_t cap,
                                 size_t *out_len);

bool wc_partition_equal(const struct WcPartition *a, const struct WcPartition *b);

enum WcStatus wc_partition_transpose(const struct WcPartition *p, struct WcPartition **out);

bool wc_partition_is_regular(const struct WcPartition *p, size_t e);

/**
 * A Mullineux engine with its own memo cache.
 */
struct WcEngine *wc_engine_new(void);

void wc_engine_free(struct WcEngine *engine);

size_t wc_engine_cache_len(const struct WcEngine *engine);

enum WcStatus wc_engine_load_cache(const struct WcEngine *engine, const char *path);

enum WcStatus wc_engine_persist_cache(const struct WcEngine *engine, const char *path);

/**
 * `M_e` on an `e`-regular partition.
 */
enum WcStatus wc_mullineux_regular(const struct WcEngine *engine,
                                   const struct WcPartition *p,
                                   size_t e,
                                   struct WcPartition **out);

/**
 * Generalized `M_e` on any partition.
 */
enum WcStatus wc_mullineux(const struct WcEngine *engine,
                           const struct WcPartition *p,
                           size_t e,
                           struct WcPartition **out);

enum WcStatus wc_mprime(const struct WcPartition *p, size_t e, struct WcPartition **out);

/**
 * `transpose(M_e(λ))`.
 */
enum WcStatus wc_cross(const struct WcEngine *engine,
                       const struct WcPartition *p,
                       size_t e,
                       struct WcPartition **out);

enum WcStatus wc_mtilde(const struct WcEngine *engine,
                        const struct WcPartition *p,
                        size_t n,
                        uint64_t numerator,
                        uint64_t denominator,
                        struct WcPartition **out);

enum WcStatus wc_mtilde_prime(const struct WcPartition *p,
                              size_t n,
                              uint64_t numerator,
                              uint64_t denominator,
                              struct WcPartition **out);

enum WcStatus wc_trajectory_new(const struct WcEngine *engine,
                                const struct WcPartition *start,
                                size_t n,
                                struct WcTrajectory **out);

void wc_trajectory_free(struct WcTrajectory *t);

/**
 * Number of walls crossed; 0 for a null handle.
 */
size_t wc_trajectory_len(const struct WcTrajectory *t);

/**
 * Wall and state of step `index`.
 */
enum WcStatus wc_trajectory_step(const struct WcTrajectory *t,
                                 size_t index,
                                 uint64_t *out_numerator,
                                 uint64_t *out_denominator,
                                 struct WcPartition **out_state);

/**
 * `{n, start, steps, change_points}` as JSON.
 */
enum WcStatus wc_trajectory_json(const struct WcTrajectory *t, char **out);

/**
 * Predicted change points of `(1^p)` in `[m/p, (m+1)/p)` as JSON.
 */
enum WcStatus wc_predict_json(size_t p, size_t m, char **out);

/**
 * Predictor against engine for prime `p`. `out_report` may be null.
 */
enum WcStatus wc_verify_sign(const struct WcEngine *engine,
                             size_t p,
                             size_t bound,
                             size_t jobs,
                             bool *out_passed,
                             char **out_report);

/**
 * Row statistic sweep over all `n' <= n`. `out_report` may be null.
 */
enum WcStatus wc_verify_bez(const struct WcEngine *engine,
                            size_t n,
                            enum WcSide side,
                            enum WcWallSet wallset,
                            size_t bound,
                            size_t jobs,
                            bool *out_passed,
                            char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALLCROSS_H */
