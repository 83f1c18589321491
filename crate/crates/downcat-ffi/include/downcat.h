#ifndef DOWNCAT_H
#define DOWNCAT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. The first four agree with the CLI exit codes.
 */
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_CHECK_FAILED = 1,
  DC_STATUS_INPUT_ERROR = 2,
  DC_STATUS_RESOURCE_BOUND = 3,
  DC_STATUS_NULL_POINTER = 4,
  DC_STATUS_PANIC = 5,
} DcStatus;

/**
 * A finite category, with its Reedy structure when one was given.
 */
typedef struct DcCategory DcCategory;

/**
 * `Down(C)` or a bounded `Down⁎(C)` together with the category it was built from.
 */
typedef struct DcDown DcDown;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message recorded on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *dc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void dc_string_free(char *s);

/**
 * Parses a category in the JSON format.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DcStatus dc_category_from_json(const char *json, struct DcCategory **out);

/**
 * Builds a builtin: `W3`, `C'`, `TS0`..`TS3` or `discrete1`..`discrete3`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DcStatus dc_category_builtin(const char *name, struct DcCategory **out);

/**
 * # Safety
 * `c` must be null or a handle from this library, not used afterwards.
 */
void dc_category_free(struct DcCategory *c);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
size_t dc_category_num_objects(const struct DcCategory *c);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
size_t dc_category_num_morphisms(const struct DcCategory *c);

/**
 * Checks the category laws and the Reedy axioms when present. Returns
 * `CHECK_FAILED` with the violations in `report` when any fail; `report`
 * may be null.
 *
 * # Safety
 * `c` must be a live handle; `report` null or a valid pointer.
 */
enum DcStatus dc_category_validate(const struct DcCategory *c, char **report);

/**
 * The category in the JSON format.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum DcStatus dc_category_to_json(const struct DcCategory *c, char **out);

/**
 * The category as DOT.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum DcStatus dc_category_to_dot(const struct DcCategory *c, char **out);

/**
 * Builds `Down(C)`; the category must carry a valid Reedy structure.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum DcStatus dc_down_build(const struct DcCategory *c, struct DcDown **out);

/**
 * Builds `Down⁎(C)` on chains of length at most `max_len`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum DcStatus dc_down_build_star(const struct DcCategory *c, size_t max_len, struct DcDown **out);

/**
 * # Safety
 * `d` must be null or a handle from this library, not used afterwards.
 */
void dc_down_free(struct DcDown *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
size_t dc_down_num_objects(const struct DcDown *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
size_t dc_down_num_morphisms(const struct DcDown *d);

/**
 * 1 when the category is direct, 0 when not or when `d` is null.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
int32_t dc_down_is_direct(const struct DcDown *d);

/**
 * `Down(C)` as JSON with its decode tables.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum DcStatus dc_down_to_json(const struct DcDown *d, char **out);

/**
 * Runs every suite under profile 0 (quick), 1 (default) or 2 (full) and
 * writes the reports as a JSON array to `out`, which may be null.
 *
 * # Safety
 * `out` must be null or a valid pointer.
 */
enum DcStatus dc_selftest(int32_t profile, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOWNCAT_H */
