#ifndef LINECUT_H
#define LINECUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_INVALID_UTF8 = 2,
  LC_STATUS_INSTANCE_EMPTY = 3,
  LC_STATUS_PARSE_ERROR = 4,
  LC_STATUS_PRECISION_ERROR = 5,
  LC_STATUS_RANGE_ERROR = 6,
  LC_STATUS_INVALID_PROFILE = 7,
  LC_STATUS_INVALID_K = 8,
  LC_STATUS_UNSUPPORTED_PROBLEM = 9,
  LC_STATUS_ODD_BISECTION = 10,
  LC_STATUS_TOO_LARGE_FOR_ORACLE = 11,
  LC_STATUS_INVALID_ARGUMENT = 12,
  LC_STATUS_OVERFLOW = 13,
  LC_STATUS_INTERNAL = 14,
  LC_STATUS_PANIC = 15,
} LcStatus;

typedef enum LcObjective {
  LC_OBJECTIVE_MIN = 0,
  LC_OBJECTIVE_MAX = 1,
} LcObjective;

// Opaque compressed instance.
typedef struct LcInstance LcInstance;

// Opaque solution.
typedef struct LcSolution LcSolution;

// Message for the last failed call on this thread. Valid until the next call
// into this library from the same thread; never null.
const char *lc_last_error(void);

// Parses an instance in the text format (`<decimal> [multiplicity]` per line).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum LcStatus lc_instance_parse(const char *text, struct LcInstance **out);

// Builds an instance from scaled integer coordinates (`x * 10^scale_exp`).
//
// # Safety
// `coords` must point to `len` readable values and `out` must be valid.
enum LcStatus lc_instance_from_scaled(const int64_t *coords,
                                      size_t len,
                                      uint32_t scale_exp,
                                      struct LcInstance **out);

// # Safety
// `instance` must be null or a handle from this library not yet freed.
void lc_instance_free(struct LcInstance *instance);

// Number of points, 0 for a null handle.
//
// # Safety
// `instance` must be null or a live handle.
size_t lc_instance_len(const struct LcInstance *instance);

// Number of distinct values, 0 for a null handle.
//
// # Safety
// `instance` must be null or a live handle.
size_t lc_instance_distinct(const struct LcInstance *instance);

// Solves exactly with the dynamic program. With `constrained` false, `k` is
// ignored and only `LC_OBJECTIVE_MAX` is accepted.
//
// # Safety
// `instance` must be a live handle and `out` a valid pointer.
enum LcStatus lc_solve(const struct LcInstance *instance,
                       enum LcObjective objective,
                       bool constrained,
                       int64_t k,
                       struct LcSolution **out);

// Solves by exhaustive enumeration; fails with `LC_STATUS_TOO_LARGE_FOR_ORACLE`
// above the default profile cap.
//
// # Safety
// As for [`lc_solve`].
enum LcStatus lc_oracle_solve(const struct LcInstance *instance,
                              enum LcObjective objective,
                              bool constrained,
                              int64_t k,
                              struct LcSolution **out);

// # Safety
// `solution` must be null or a handle from this library not yet freed.
void lc_solution_free(struct LcSolution *solution);

// Optimal value in units of `10^-scale_exp`, split into the high and low 64
// bits of a signed 128-bit integer.
//
// # Safety
// `solution` must be a live handle; `hi` and `lo` valid pointers.
enum LcStatus lc_solution_value_scaled(const struct LcSolution *solution,
                                       int64_t *hi,
                                       uint64_t *lo);

// Optimal value as an exact decimal string. Free with [`lc_string_free`].
// Returns null on a null handle.
//
// # Safety
// `solution` must be null or a live handle.
char *lc_solution_value_string(const struct LcSolution *solution);

// Size of the first set.
//
// # Safety
// `solution` must be null or a live handle.
size_t lc_solution_first_size(const struct LcSolution *solution);

// Length of the count profile (the number of distinct values).
//
// # Safety
// `solution` must be null or a live handle.
size_t lc_solution_profile_len(const struct LcSolution *solution);

// Copies the first-set count of each distinct value (ascending) into `buf`.
// `len` must equal [`lc_solution_profile_len`].
//
// # Safety
// `solution` must be a live handle and `buf` must hold `len` writable values.
enum LcStatus lc_solution_profile(const struct LcSolution *solution, size_t *buf, size_t len);

// Cut value of a count profile, scaled like [`lc_solution_value_scaled`].
//
// # Safety
// `instance` must be a live handle, `counts` must hold `len` values, and
// `hi`/`lo` must be valid pointers.
enum LcStatus lc_cut_value(const struct LcInstance *instance,
                           const size_t *counts,
                           size_t len,
                           int64_t *hi,
                           uint64_t *lo);

// Frees a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void lc_string_free(char *s);

#endif  /* LINECUT_H */
