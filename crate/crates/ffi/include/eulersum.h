#ifndef EULERSUM_H
#define EULERSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum EsStatus {
  ES_STATUS_OK = 0,
  ES_STATUS_DOMAIN = 1,
  ES_STATUS_NO_CONVERGENCE = 2,
  ES_STATUS_OVERFLOW = 3,
  ES_STATUS_UNKNOWN_ID = 4,
  ES_STATUS_VALIDITY_VIOLATION = 5,
  ES_STATUS_TRUNCATION_TOO_SMALL = 6,
  ES_STATUS_CONFIG = 7,
  ES_STATUS_NULL_POINTER = 8,
  ES_STATUS_INVALID_UTF8 = 9,
  ES_STATUS_PANIC = 10,
} EsStatus;

/**
 * Opaque exact value: a rational combination of 1, ζ(m) and π·Cl₂(qπ).
 */
typedef struct EsClosedForm EsClosedForm;

/**
 * Opaque batch of verification reports.
 */
typedef struct EsReportSet EsReportSet;

/**
 * Plain-data summary of one verification.
 */
typedef struct EsReport {
  double lhs;
  double rhs;
  double abs_diff;
  double tol;
  double error_estimate;
  double seconds;
  uint64_t terms;
  bool pass;
} EsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Length in bytes of the calling thread's last error message, excluding
 * the terminator; 0 if the last call succeeded.
 */
size_t es_last_error_length(void);

/**
 * Copies the last error message (NUL-terminated, truncated to fit) into
 * `buf`. Returns the full message length, like `snprintf`.
 *
 * # Safety
 * `buf` must be NULL or point to `len` writable bytes.
 */
size_t es_last_error_message(char *buf, size_t len);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void es_string_free(char *s);

/**
 * ψ(x).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_digamma(double x, double *out);

/**
 * ψ′(x).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_trigamma(double x, double *out);

/**
 * ψ⁽ⁿ⁾(x).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_polygamma(uint32_t n, double x, double *out);

/**
 * log Γ(x) for x > 0.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_ln_gamma(double x, double *out);

/**
 * ζ(m) at an integer m ≠ 1.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_zeta(uint32_t m, double *out);

/**
 * Liₙ(z) for n ≥ 1, |z| ≤ 1.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EsStatus es_polylog(uint32_t n, double z, double *out);

/**
 * Cl₂(θ).
 */
double es_clausen2(double theta);

/**
 * Closed form of `Σ_{n≥1} [γ+ψ(1+kn)]/n²`, or of its alternating version.
 *
 * # Safety
 * `out` must be valid for a write; the handle written there is released
 * with [`es_closed_form_free`].
 */
enum EsStatus es_theorem1_closed_form(uint32_t k, bool alternating, struct EsClosedForm **out);

/**
 * Right-hand side of a catalog identity.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out` must be valid for a write.
 */
enum EsStatus es_catalog_rhs(const char *id, struct EsClosedForm **out);

/**
 * Numeric value of a closed form.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be valid for a write.
 */
enum EsStatus es_closed_form_eval(const struct EsClosedForm *cf, double *out);

/**
 * Rendering such as `67/8*zeta(3) - 2*pi*Cl2(1/2*pi)`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be valid for a write. The string
 * is released with [`es_string_free`].
 */
enum EsStatus es_closed_form_to_string(const struct EsClosedForm *cf, char **out);

/**
 * Whether two closed forms are identical after canonicalization.
 *
 * # Safety
 * Both handles must be live; `out` must be valid for a write.
 */
enum EsStatus es_closed_form_equal(const struct EsClosedForm *a,
                                   const struct EsClosedForm *b,
                                   bool *out);

/**
 * # Safety
 * `cf` must be NULL or a handle not yet freed.
 */
void es_closed_form_free(struct EsClosedForm *cf);

/**
 * Number of catalog identities.
 */
size_t es_catalog_len(void);

/**
 * Id of the `index`-th catalog identity.
 *
 * # Safety
 * `out` must be valid for a write; the string is released with
 * [`es_string_free`].
 */
enum EsStatus es_catalog_id(size_t index, char **out);

/**
 * Verifies one identity (`tol <= 0` keeps the catalog tolerance).
 *
 * A summation failure is not an error: it yields a report with
 * `pass = false` and `lhs = NaN`, and its reason is stored as the last
 * error message.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out` must be valid for a write.
 */
enum EsStatus es_verify(const char *id, double tol, struct EsReport *out);

/**
 * Verifies the whole catalog plus the general-k rows with `jobs` worker
 * threads (0 uses all cores).
 *
 * # Safety
 * `out` must be valid for a write; the handle is released with
 * [`es_report_set_free`].
 */
enum EsStatus es_verify_all(size_t jobs, struct EsReportSet **out);

/**
 * Number of reports in a set (0 for NULL).
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t es_report_set_len(const struct EsReportSet *set);

/**
 * The `index`-th report and, if `id_out` is not NULL, its id.
 *
 * # Safety
 * `set` must be a live handle; `out` must be valid for a write; `id_out`
 * must be NULL or valid for a write (the id is released with
 * [`es_string_free`]).
 */
enum EsStatus es_report_set_get(const struct EsReportSet *set,
                                size_t index,
                                struct EsReport *out,
                                char **id_out);

/**
 * The set as line-delimited JSON.
 *
 * # Safety
 * `set` must be a live handle; `out` must be valid for a write. The
 * string is released with [`es_string_free`].
 */
enum EsStatus es_report_set_to_json(const struct EsReportSet *set, char **out);

/**
 * # Safety
 * `set` must be NULL or a handle not yet freed.
 */
void es_report_set_free(struct EsReportSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULERSUM_H */
