#ifndef CHARPAIR_H
#define CHARPAIR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call. `Ok` is zero; everything else
 * leaves a detail message readable through `charpair_last_error`.
 */
typedef enum CharpairStatus {
  CharpairStatus_Ok = 0,
  CharpairStatus_NullArgument = 1,
  CharpairStatus_InvalidUtf8 = 2,
  CharpairStatus_Parse = 3,
  CharpairStatus_Data = 4,
  CharpairStatus_Arithmetic = 5,
  CharpairStatus_TraceObstruction = 6,
  CharpairStatus_TowerBound = 7,
  CharpairStatus_Resource = 8,
  CharpairStatus_Precision = 9,
  CharpairStatus_Hypothesis = 10,
  CharpairStatus_Config = 11,
  CharpairStatus_Panic = 12,
} CharpairStatus;

/**
 * An opaque conic bundle handle.
 */
typedef struct CharpairBundle CharpairBundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The most recent error message on this thread, or NULL when the last
 * call succeeded. Free the result with `charpair_string_free`.
 */
char *charpair_last_error(void);

/**
 * A static name for a status code. Never freed by the caller.
 */
const char *charpair_status_name(enum CharpairStatus status);

/**
 * Frees a string returned by any call in this library.
 */
void charpair_string_free(char *s);

/**
 * The built-in integral example bundle. Free with `charpair_bundle_free`.
 */
struct CharpairBundle *charpair_bundle_example(void);

/**
 * The built-in companion bundle over F_2. Free with `charpair_bundle_free`.
 */
struct CharpairBundle *charpair_bundle_companion(void);

/**
 * Parses a bundle from its JSON description.
 */
enum CharpairStatus charpair_bundle_from_json(const char *json, struct CharpairBundle **out);

/**
 * Serializes a bundle as JSON.
 */
enum CharpairStatus charpair_bundle_to_json(const struct CharpairBundle *bundle, char **out);

/**
 * Reduces the coefficients modulo a prime, producing a new handle.
 */
enum CharpairStatus charpair_bundle_reduce_mod(const struct CharpairBundle *bundle,
                                               uint64_t p,
                                               struct CharpairBundle **out);

void charpair_bundle_free(struct CharpairBundle *bundle);

/**
 * The discriminant of the bundle, printed as a polynomial.
 */
enum CharpairStatus charpair_discriminant(const struct CharpairBundle *bundle, char **out);

/**
 * The degenerate fibers over the prime field, as a JSON array of
 * `{ "point": ..., "fiber": ... }` rows in table order. The bundle must
 * live over a finite field.
 */
enum CharpairStatus charpair_fiber_table_json(const struct CharpairBundle *bundle, char **out);

/**
 * The double cover of a discriminant line and its residue class, as
 * JSON. `line` is a linear form in the base variables, e.g. `"u+w"`.
 * The bundle must live over a field of characteristic 2.
 */
enum CharpairStatus charpair_line_residue_json(const struct CharpairBundle *bundle,
                                               const char *line,
                                               uintptr_t kmax,
                                               char **out);

/**
 * Resolves the singular points of a characteristic-2 bundle by blowing
 * up, reporting the chains as JSON. `factors` is a comma-separated list
 * of the discriminant's irreducible factors; NULL selects the built-in
 * example's list.
 */
enum CharpairStatus charpair_resolution_report_json(const struct CharpairBundle *bundle,
                                                    const char *factors,
                                                    uint32_t series_order,
                                                    char **out);

/**
 * Runs the full verification pipeline on an integral bundle. `primes`
 * may be NULL with `n_primes` zero to use the default list. On success
 * `out_passed` receives the overall verdict and `out_json` the report.
 */
enum CharpairStatus charpair_verify_json(const struct CharpairBundle *bundle,
                                         const uint64_t *primes,
                                         uintptr_t n_primes,
                                         uintptr_t kmax,
                                         uint32_t series_order,
                                         bool allow_skips,
                                         char **out_json,
                                         bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARPAIR_H */
