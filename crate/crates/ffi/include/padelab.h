#ifndef PADELAB_H
#define PADELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PadelabStatus {
  PADELAB_STATUS_OK = 0,
  // A required pointer argument was NULL.
  PADELAB_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  PADELAB_STATUS_INVALID_UTF8 = 2,
  // Malformed or out-of-range input (the CLI's exit code 2).
  PADELAB_STATUS_INVALID_INPUT = 3,
  // A mathematical degeneracy: blocked entry, singular step, near pole
  // (the CLI's exit code 1).
  PADELAB_STATUS_DOMAIN = 4,
  // Internal panic caught at the boundary.
  PADELAB_STATUS_PANIC = 5,
} PadelabStatus;

// Exact rational function, normalized so that `den(0) = 1`.
typedef struct PadelabRationalFunction PadelabRationalFunction;

// Truncated power series with exact rational coefficients.
typedef struct PadelabSeries PadelabSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *padelab_last_error(void);

// Library version as a static NUL-terminated string.
const char *padelab_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be NULL or a pointer obtained from this library, freed once.
void padelab_string_free(char *s);

// Builds a series from a JSON document or a builtin name (`exp`,
// `geometric`, `geometric(a)`), expanded through `z^order`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum PadelabStatus padelab_series_new(const char *spec, size_t order, struct PadelabSeries **out);

// # Safety
// `s` must be NULL or a handle from [`padelab_series_new`], freed once.
void padelab_series_free(struct PadelabSeries *s);

// Highest stored power of the series.
//
// # Safety
// `s` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_series_order(const struct PadelabSeries *s, size_t *out);

// Coefficient of `z^index` as a `"p/q"` string.
//
// # Safety
// `s` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_series_coeff(const struct PadelabSeries *s, size_t index, char **out);

// The Padé approximant `[l/m]`. A block entry fails with
// `PADELAB_STATUS_DOMAIN`.
//
// # Safety
// `s` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_pade(const struct PadelabSeries *s,
                                size_t l,
                                size_t m,
                                struct PadelabRationalFunction **out);

// # Safety
// `rf` must be NULL or a handle from this library, freed once.
void padelab_ratfunc_free(struct PadelabRationalFunction *rf);

// `{"num": [...], "den": [...]}` with `"p/q"` coefficients, lowest power
// first.
//
// # Safety
// `rf` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_ratfunc_to_json(const struct PadelabRationalFunction *rf, char **out);

// Float value at `re + i·im`, computed at `precision_bits` (24 or 53).
//
// # Safety
// `rf` must be a valid handle; `out_re` and `out_im` must be writable.
enum PadelabStatus padelab_ratfunc_eval(const struct PadelabRationalFunction *rf,
                                        double re,
                                        double im,
                                        uint32_t precision_bits,
                                        double *out_re,
                                        double *out_im);

// The Padé table up to `(l_max, m_max)` as JSON.
//
// # Safety
// `s` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_table_json(const struct PadelabSeries *s,
                                      size_t l_max,
                                      size_t m_max,
                                      char **out);

// Hankel determinant grid as CSV (rows `m`, columns `p`).
//
// # Safety
// `s` must be a valid handle; `out` must be writable.
enum PadelabStatus padelab_hankel_csv(const struct PadelabSeries *s,
                                      size_t m_max,
                                      size_t p_max,
                                      char **out);

// Euclid expansion of a `"p/q"` rational: `{"q0": "...", "terms": [...]}`.
//
// # Safety
// `rational` must be a NUL-terminated string; `out` must be writable.
enum PadelabStatus padelab_cf_euclid_json(const char *rational, char **out);

// Runs a row-convergence experiment from its JSON config and returns the
// full JSON report.
//
// # Safety
// `config` must be a NUL-terminated string; `out` must be writable.
enum PadelabStatus padelab_montessus_json(const char *config, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADELAB_H */
