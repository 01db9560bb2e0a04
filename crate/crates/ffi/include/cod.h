#ifndef COD_H
#define COD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CodStatus {
  COD_STATUS_OK = 0,
  COD_STATUS_NULL_POINTER = 1,
  COD_STATUS_INVALID_UTF8 = 2,
  COD_STATUS_PARSE_ERROR = 3,
  COD_STATUS_INVALID_ARGUMENT = 4,
  COD_STATUS_NOT_COD = 5,
  COD_STATUS_NOT_BCOD = 6,
  COD_STATUS_NOT_STANDARD_FORM = 7,
  COD_STATUS_UNREACHABLE = 8,
  COD_STATUS_NO_COMPLEMENT = 9,
  /**
   * The search ran out of its node budget.
   */
  COD_STATUS_RESOURCE_LIMIT = 10,
  /**
   * The search proved that no design exists within the bounds.
   */
  COD_STATUS_NONE_EXISTS = 11,
  COD_STATUS_INTERNAL = 12,
} CodStatus;

/**
 * Opaque design handle.
 */
typedef struct CodDesign CodDesign;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next library call on the same thread.
 */
const char *cod_last_error_message(void);

/**
 * Parse a design from its text form.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum CodStatus cod_design_parse(const char *text, struct CodDesign **out);

/**
 * Build the delay-`2^m` balanced design on `2m` columns.
 *
 * # Safety
 * `out` must be writable.
 */
enum CodStatus cod_design_construct(size_t m, struct CodDesign **out);

/**
 * # Safety
 * `d` must come from this library and not have been freed; null is a no-op.
 */
void cod_design_free(struct CodDesign *d);

/**
 * Text form of a design; release with `cod_string_free`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CodStatus cod_design_serialize(const struct CodDesign *d, char **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is a no-op.
 */
void cod_string_free(char *s);

/**
 * Rows, columns and variable count.
 *
 * # Safety
 * `d` must be a live handle; the outputs must be writable.
 */
enum CodStatus cod_design_dims(const struct CodDesign *d, size_t *p, size_t *n, uint32_t *k);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CodStatus cod_is_cod(const struct CodDesign *d, bool *out);

/**
 * False for anything that is not a balanced design, including non-CODs.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CodStatus cod_is_bcod(const struct CodDesign *d, bool *out);

/**
 * Smallest variable `j` whose B_j form the design is already in, or 0.
 *
 * # Safety
 * `d` must be a live handle; `witness` must be writable.
 */
enum CodStatus cod_standard_form_witness(const struct CodDesign *d, uint32_t *witness);

/**
 * Reduce a standard-form design to B_var form. Writes the new design and,
 * if `ops` is not null, the op script (1-based, one op per line).
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable; `ops` may be null.
 */
enum CodStatus cod_to_bj_form(const struct CodDesign *d,
                              uint32_t var,
                              struct CodDesign **out,
                              char **ops);

/**
 * Complement row of `row` (both 0-based).
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CodStatus cod_find_complement(const struct CodDesign *d, size_t row, size_t *out);

/**
 * Left-pattern coverage check behind `p >= 2^m`.
 *
 * # Safety
 * `d` must be a live handle; the outputs must be writable.
 */
enum CodStatus cod_verify_delay_bound(const struct CodDesign *d, bool *passed, bool *with_equality);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CodStatus cod_is_atomic(const struct CodDesign *d, bool *out);

/**
 * Radon–Hurwitz exponent of `n >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CodStatus cod_delta(size_t n, uint32_t *out);

/**
 * Delay lower bound for maximum-rate designs on `n` columns.
 *
 * # Safety
 * `out` must be writable.
 */
enum CodStatus cod_max_rate_delay_bound(size_t n, uint64_t *out);

/**
 * Exhaustive minimum-delay search. Returns `NoneExists` when no balanced
 * design with at most `p_max` rows exists. `node_limit` 0 means the
 * default budget.
 *
 * # Safety
 * `out` must be writable.
 */
enum CodStatus cod_search_min_delay(size_t n,
                                    size_t p_max,
                                    size_t workers,
                                    uint64_t node_limit,
                                    struct CodDesign **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COD_H */
