#ifndef LUKA_H
#define LUKA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Pass as `ell` for an unbounded jump size.
 */
#define LUKA_ELL_INF UINT32_MAX

typedef enum LukaStatus {
  LUKA_STATUS_OK = 0,
  LUKA_STATUS_NULL_POINTER = 1,
  LUKA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The model has no transition, or the requested quantity is undefined for it.
   */
  LUKA_STATUS_UNSUPPORTED = 3,
  /**
   * Enumeration would exceed the path cap.
   */
  LUKA_STATUS_RESOURCE_LIMIT = 4,
  LUKA_STATUS_COMPUTATION_FAILED = 5,
  LUKA_STATUS_PANIC = 6,
} LukaStatus;

/**
 * Opaque model handle.
 */
typedef struct LukaModel LukaModel;

typedef struct LukaCriticalPoint {
  double u_c;
  double z_c;
  double a_c;
  /**
   * The three values are exact rationals; the doubles above are their roundings.
   */
  bool exact;
} LukaCriticalPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a `(k, ell)` model. Use [`LUKA_ELL_INF`] for `ell = inf`.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum LukaStatus luka_model_new(uint32_t k, uint32_t ell, struct LukaModel **out);

/**
 * # Safety
 * `model` must be null or a handle from [`luka_model_new`] not yet freed.
 */
void luka_model_free(struct LukaModel *model);

/**
 * `u_c`, `z_c` and `a_c`, certified to within `tol`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be valid for writing.
 */
enum LukaStatus luka_critical_point(const struct LukaModel *model,
                                    double tol,
                                    struct LukaCriticalPoint *out);

/**
 * Radius of convergence `z_c(a)` for `a >= 1`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be valid for writing.
 */
enum LukaStatus luka_zc(const struct LukaModel *model, double a, double tol, double *out);

/**
 * `kappa(a) = -log z_c(a)`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be valid for writing.
 */
enum LukaStatus luka_free_energy(const struct LukaModel *model, double a, double tol, double *out);

/**
 * Number of paths of length `n`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be valid for writing.
 */
enum LukaStatus luka_count(const struct LukaModel *model, size_t n, uint64_t *out);

/**
 * Partition polynomial `Z_n(a)` (or `Z_n(a,q)` when `with_area`) as a JSON object
 * mapping `"i,j"` exponent pairs of `a` and `q` to coefficients.
 *
 * # Safety
 * `model` must be a live handle; `out` must be valid for writing. Release the
 * string with [`luka_string_free`].
 */
enum LukaStatus luka_partition_json(const struct LukaModel *model,
                                    size_t n,
                                    bool with_area,
                                    char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void luka_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *luka_last_error(void);

/**
 * Library version as a static string.
 */
const char *luka_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LUKA_H */
