/* Generated by cbindgen from src/lib.rs. Do not edit. */

#ifndef ABSORDER_H
#define ABSORDER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The nonzero values 2 to 4 agree with the CLI exit codes.
 */
typedef enum AbsorderStatus {
  ABSORDER_STATUS_OK = 0,
  /**
   * A null pointer, a zero `k`, or a non-UTF-8 string.
   */
  ABSORDER_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The group id or element text did not parse.
   */
  ABSORDER_STATUS_PARSE = 2,
  /**
   * The group is larger than the size guard.
   */
  ABSORDER_STATUS_TOO_LARGE = 3,
  /**
   * An internal certificate failed validation.
   */
  ABSORDER_STATUS_VERIFICATION_FAILED = 4,
  /**
   * The output buffer is too short; the required length was still written.
   */
  ABSORDER_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  ABSORDER_STATUS_PANIC = 6,
} AbsorderStatus;

/**
 * A graded poset whose vertices carry text labels.
 */
typedef struct AbsorderPoset AbsorderPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the absolute order of `group` (`"a3"`, `"b2"`, `"i2:7"`), labelled by
 * element text. `max_group` = 0 selects the default size guard.
 *
 * # Safety
 * `group` must be a valid C string and `out` a writable pointer.
 */
enum AbsorderStatus absorder_absolute_order_new(const char *group,
                                                uint64_t max_group,
                                                struct AbsorderPoset **out);

/**
 * Builds the product of tier claws of `group`, labelled by tier tuples.
 *
 * # Safety
 * `group` must be a valid C string and `out` a writable pointer.
 */
enum AbsorderStatus absorder_claw_product_new(const char *group,
                                              uint64_t max_group,
                                              struct AbsorderPoset **out);

/**
 * Releases a poset. Null is ignored.
 *
 * # Safety
 * `p` must be null or an unfreed handle from this library.
 */
void absorder_poset_free(struct AbsorderPoset *p);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or an unfreed handle from this library.
 */
size_t absorder_poset_len(const struct AbsorderPoset *p);

/**
 * Copies the rank sequence into `buf`. `*written` always receives the full
 * length, so a call with `buf` = null and `len` = 0 queries the size.
 *
 * # Safety
 * `buf` must have room for `len` values (or be null when `len` is 0) and
 * `written` must be writable.
 */
enum AbsorderStatus absorder_poset_rank_sequence(const struct AbsorderPoset *p,
                                                 uint64_t *buf,
                                                 size_t len,
                                                 size_t *written);

/**
 * Size of a largest `k`-family. The certificate behind it is validated before
 * returning; a rejected certificate yields `VERIFICATION_FAILED`.
 *
 * # Safety
 * `p` must be an unfreed handle and `out_size` writable.
 */
enum AbsorderStatus absorder_max_k_family(const struct AbsorderPoset *p,
                                          size_t k,
                                          size_t *out_size);

/**
 * Whether every `k`-family is at most the sum of the `k` largest ranks.
 *
 * # Safety
 * `p` must be an unfreed handle and `out` writable.
 */
enum AbsorderStatus absorder_is_strong_sperner(const struct AbsorderPoset *p, bool *out);

/**
 * Writes the tier factorization of `element` in `group` as text, for example
 * `"(2 3)(1 2)"`. Free the result with [`absorder_string_free`].
 *
 * # Safety
 * `group` and `element` must be valid C strings and `out` writable.
 */
enum AbsorderStatus absorder_factorize(const char *group, const char *element, char **out);

/**
 * Writes a Graphviz rendering of the poset. Free the result with
 * [`absorder_string_free`].
 *
 * # Safety
 * `p` must be an unfreed handle and `out` writable.
 */
enum AbsorderStatus absorder_poset_to_dot(const struct AbsorderPoset *p, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or an unfreed string from this library.
 */
void absorder_string_free(char *s);

/**
 * Message for the last failed call on this thread, or `""` after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *absorder_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ABSORDER_H */
