#ifndef REALFORM_H
#define REALFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; `RF_STATUS_OK` is zero.
 */
typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_POINTER = 1,
  RF_STATUS_INVALID_UTF8 = 2,
  RF_STATUS_UNKNOWN_FORM = 3,
  RF_STATUS_INVALID_ARGUMENT = 4,
  RF_STATUS_INCONSISTENT_DIAGRAM = 5,
  RF_STATUS_PARSE = 6,
  RF_STATUS_DIMENSION_MISMATCH = 7,
  RF_STATUS_OVERFLOW = 8,
  RF_STATUS_VERIFICATION_FAILED = 9,
  RF_STATUS_INTERNAL = 10,
} RfStatus;

/**
 * A real form with its structure table in the basis B.
 */
typedef struct RfForm RfForm;

/**
 * The nilradical n of an Iwasawa decomposition, raw or normalized.
 */
typedef struct RfNilpotent RfNilpotent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *rf_last_error(void);

/**
 * Builds a catalog form. `n` is the family parameter; pass 0 for fixed forms such as `FII`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `result` a valid pointer.
 */
enum RfStatus rf_form_from_catalog(const char *name, uint32_t n, struct RfForm **result);

/**
 * Builds a form from diagram text such as `type=C rank=3; shaded=0,2; arrows=;`.
 *
 * # Safety
 * `diagram` must be a NUL-terminated string and `result` a valid pointer.
 */
enum RfStatus rf_form_from_diagram(const char *diagram, struct RfForm **result);

/**
 * # Safety
 * `form` must come from `rf_form_from_*` and not be freed twice. NULL is ignored.
 */
void rf_form_free(struct RfForm *form);

/**
 * # Safety
 * `form` must be a live handle and `dim` a valid pointer.
 */
enum RfStatus rf_form_dim(const struct RfForm *form, size_t *dim);

/**
 * # Safety
 * `form` must be a live handle and `rank` a valid pointer.
 */
enum RfStatus rf_form_real_rank(const struct RfForm *form, size_t *rank);

/**
 * Structure table as JSON; release the string with `rf_string_free`.
 *
 * # Safety
 * `form` must be a live handle and `json` a valid pointer.
 */
enum RfStatus rf_form_table_json(const struct RfForm *form, char **json);

/**
 * Checks the Jacobi identity on every basis triple; `RF_STATUS_VERIFICATION_FAILED` on a violation.
 *
 * # Safety
 * `form` must be a live handle.
 */
enum RfStatus rf_form_verify_jacobi(const struct RfForm *form);

/**
 * Extracts n. With `normalized` nonzero the named-root normalization is applied
 * where one exists; other forms fall back to the raw basis.
 *
 * # Safety
 * `form` must be a live handle and `result` a valid pointer.
 */
enum RfStatus rf_nilpotent_from_form(const struct RfForm *form,
                                     int32_t normalized,
                                     struct RfNilpotent **result);

/**
 * # Safety
 * `algebra` must come from `rf_nilpotent_from_form` and not be freed twice. NULL is ignored.
 */
void rf_nilpotent_free(struct RfNilpotent *algebra);

/**
 * # Safety
 * `algebra` must be a live handle and `dim` a valid pointer.
 */
enum RfStatus rf_nilpotent_dim(const struct RfNilpotent *algebra, size_t *dim);

/**
 * Nilpotency class; 0 for the zero algebra.
 *
 * # Safety
 * `algebra` must be a live handle and `class` a valid pointer.
 */
enum RfStatus rf_nilpotent_class(const struct RfNilpotent *algebra, size_t *class_);

/**
 * # Safety
 * `algebra` must be a live handle and `dim` a valid pointer.
 */
enum RfStatus rf_nilpotent_center_dim(const struct RfNilpotent *algebra, size_t *dim);

/**
 * Group product `x · y` in exponential coordinates, all arrays of length `len`.
 * `RF_STATUS_OVERFLOW` when a result coordinate does not fit in `int64_t`.
 *
 * # Safety
 * Each array pointer must reference `len` readable (inputs) or writable (outputs) values.
 */
enum RfStatus rf_nilpotent_multiply(const struct RfNilpotent *algebra,
                                    const int64_t *x_num,
                                    const int64_t *x_den,
                                    const int64_t *y_num,
                                    const int64_t *y_den,
                                    size_t len,
                                    int64_t *out_num,
                                    int64_t *out_den);

/**
 * # Safety
 * `s` must come from this library. NULL is ignored.
 */
void rf_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REALFORM_H */
