#ifndef POLYVAL_H
#define POLYVAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum PvStatus {
  PV_STATUS_OK = 0,
  PV_STATUS_NULL_POINTER = 1,
  PV_STATUS_INVALID_UTF8 = 2,
  PV_STATUS_PARSE_ERROR = 3,
  PV_STATUS_INVALID_ARGUMENT = 4,
  PV_STATUS_PANIC = 5,
} PvStatus;

/**
 * An exact element of a cyclotomic field.
 */
typedef struct PvCyclo PvCyclo;

/**
 * A finite geometry with its valuation (all zero unless the source
 * provided one) and optional weights.
 */
typedef struct PvGeometry PvGeometry;

/**
 * A validated residual-distance sequence.
 */
typedef struct PvSequence PvSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library from the same thread.
 */
const char *pv_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pv_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pv_string_free(char *s);

/**
 * Parses a geometry file (JSON text). Parse errors carry the JSON path,
 * line and column.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum PvStatus pv_geometry_from_json(const char *json, struct PvGeometry **out);

/**
 * `PG(2, q)` for a prime power `q`, with zero valuation and weights for n = 3.
 *
 * # Safety
 * `out` must be writable.
 */
enum PvStatus pv_geometry_pg2(uint32_t q, struct PvGeometry **out);

/**
 * The symplectic quadrangle `W(2)`, with zero valuation and weights for n = 4.
 *
 * # Safety
 * `out` must be writable.
 */
enum PvStatus pv_geometry_w2(struct PvGeometry **out);

/**
 * The ordinary `k`-gon, `k >= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PvStatus pv_geometry_ordinary(size_t k, struct PvGeometry **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. NULL is ignored.
 */
void pv_geometry_free(struct PvGeometry *g);

/**
 * # Safety
 * `g` must be a live handle; `points` and `lines` must be writable.
 */
enum PvStatus pv_geometry_counts(const struct PvGeometry *g, size_t *points, size_t *lines);

/**
 * Checks the generalized `n`-gon axioms. A failing geometry is not an
 * error: the call succeeds and `*pass` is false.
 *
 * # Safety
 * `g` must be a live handle; `pass` must be writable.
 */
enum PvStatus pv_geometry_check_gp(const struct PvGeometry *g, size_t n, bool *pass);

/**
 * Runs the exhaustive (U1)-(U4) suite. `n = 0` uses the handle's own
 * weights. When `report` is non-NULL it receives the JSON report.
 *
 * # Safety
 * `g` must be a live handle; `pass` must be writable; `report` may be NULL.
 */
enum PvStatus pv_geometry_check_valuation(const struct PvGeometry *g,
                                          size_t n,
                                          size_t chain_limit,
                                          bool *pass,
                                          char **report);

/**
 * Exact `sin(kπ/n)` in `Q(ζ_{4n})`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PvStatus pv_cyclo_sin_pi_frac(int64_t k, uint32_t n, struct PvCyclo **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum PvStatus pv_cyclo_add(const struct PvCyclo *a, const struct PvCyclo *b, struct PvCyclo **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum PvStatus pv_cyclo_sub(const struct PvCyclo *a, const struct PvCyclo *b, struct PvCyclo **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum PvStatus pv_cyclo_mul(const struct PvCyclo *a, const struct PvCyclo *b, struct PvCyclo **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum PvStatus pv_cyclo_div(const struct PvCyclo *a, const struct PvCyclo *b, struct PvCyclo **out);

/**
 * Exact equality. Values from different fields compare unequal.
 *
 * # Safety
 * `a`, `b` must be live handles; `equal` must be writable.
 */
enum PvStatus pv_cyclo_equal(const struct PvCyclo *a, const struct PvCyclo *b, bool *equal);

/**
 * Real part in double precision.
 *
 * # Safety
 * `a` must be a live handle; `value` must be writable.
 */
enum PvStatus pv_cyclo_to_f64(const struct PvCyclo *a, double *value);

/**
 * Radical form such as `-√3/2` when available, polynomial form otherwise.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum PvStatus pv_cyclo_to_string(const struct PvCyclo *a, char **out);

/**
 * # Safety
 * `a` must come from this library and not have been freed. NULL is ignored.
 */
void pv_cyclo_free(struct PvCyclo *a);

/**
 * Validates `y[0..len]` as a residual sequence with `n = len - 1`.
 *
 * # Safety
 * `y` must point to `len` readable values; `out` must be writable.
 */
enum PvStatus pv_sequence_new(const int64_t *y, size_t len, struct PvSequence **out);

/**
 * Copies up to `capacity` entries into `buf`; `*len` receives the full length.
 *
 * # Safety
 * `s` must be a live handle; `buf` must hold `capacity` values (may be NULL
 * when `capacity` is 0); `len` must be writable.
 */
enum PvStatus pv_sequence_values(const struct PvSequence *s,
                                 int64_t *buf,
                                 size_t capacity,
                                 size_t *len);

/**
 * The exact slope of the sequence.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum PvStatus pv_sequence_slope(const struct PvSequence *s, struct PvCyclo **out);

/**
 * Raises leftmost valleys until the sequence is standard.
 *
 * # Safety
 * `s` must be a live handle; `out` and `steps` must be writable.
 */
enum PvStatus pv_sequence_reduce(const struct PvSequence *s,
                                 struct PvSequence **out,
                                 size_t *steps);

/**
 * # Safety
 * `s` must come from this library and not have been freed. NULL is ignored.
 */
void pv_sequence_free(struct PvSequence *s);

/**
 * Runs the command line in-process. `argv[0]` is the program name.
 * `*exit_code` follows the command line: 0 pass, 1 fail, 2 usage or input
 * error; `*output` receives what would be printed.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `exit_code` and `output`
 * must be writable.
 */
enum PvStatus pv_run(int argc, const char *const *argv, int *exit_code, char **output);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYVAL_H */
