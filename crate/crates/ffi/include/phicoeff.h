#ifndef PHICOEFF_H
#define PHICOEFF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Output formats for `phi_table`.
 */
typedef enum PhiFormat {
  PHI_FORMAT_TEXT = 0,
  PHI_FORMAT_JSON = 1,
} PhiFormat;

/*
 Result code of every call.
 */
typedef enum PhiStatus {
  PHI_STATUS_OK = 0,
  PHI_STATUS_NULL_POINTER = 1,
  PHI_STATUS_INVALID_UTF8 = 2,
  PHI_STATUS_INVALID_INPUT = 3,
  PHI_STATUS_UNSUPPORTED = 4,
  PHI_STATUS_GUARD_EXCEEDED = 5,
  PHI_STATUS_OUT_OF_RANGE = 6,
  PHI_STATUS_INTERNAL = 7,
  PHI_STATUS_PANIC = 8,
} PhiStatus;

/*
 One group, one `μ` and one reflection ordering, with its admissible set.
 */
typedef struct PhiEngine PhiEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on this thread.
 */
const char *phi_last_error(void);

/*
 Builds an engine. `group` is e.g. "gl4" or "gsp6", `mu` e.g. "1,1,0,0",
 `ordering` a reduced word of the longest element or null for the preset.

 # Safety
 String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum PhiStatus phi_engine_new(const char *group,
                              const char *mu,
                              const char *ordering,
                              struct PhiEngine **out);

/*
 Releases an engine; null is ignored.

 # Safety
 `h` must come from `phi_engine_new` and not be freed twice.
 */
void phi_engine_free(struct PhiEngine *h);

/*
 Number of admissible elements.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum PhiStatus phi_admissible_count(const struct PhiEngine *h, size_t *out);

/*
 Dimension `d` of the torus, i.e. the length of residue vectors.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum PhiStatus phi_rank(const struct PhiEngine *h, size_t *out);

/*
 Label of the `index`-th admissible element, e.g. "t_(1,1,0,0) s_{2312}".

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum PhiStatus phi_element_label(const struct PhiEngine *h, size_t index, char **out);

/*
 Exact coefficient at `(s, w)` as a reduced fraction "n/d" or integer.

 # Safety
 `w` must be NUL-terminated, `s` must point to `s_len` values, `out`
 must be writable.
 */
enum PhiStatus phi_coefficient_value(const struct PhiEngine *h,
                                     const char *w,
                                     const int64_t *s,
                                     size_t s_len,
                                     uint64_t q,
                                     uint32_t r,
                                     char **out);

/*
 The same coefficient from the character-sum oracle.

 # Safety
 As for `phi_coefficient_value`.
 */
enum PhiStatus phi_oracle_value(const struct PhiEngine *h,
                                const char *w,
                                const int64_t *s,
                                size_t s_len,
                                uint64_t q,
                                uint32_t r,
                                char **out);

/*
 Coefficient table of the admissible set. `assume` is "q=1 mod m" or null
 to infer `m`.

 # Safety
 `h` must be a live handle, `assume` null or NUL-terminated, `out`
 writable.
 */
enum PhiStatus phi_table(const struct PhiEngine *h,
                         const char *assume,
                         enum PhiFormat format,
                         char **out);

/*
 Releases a string returned by this library; null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void phi_string_free(char *s);

/*
 Library version, static storage.
 */
const char *phi_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHICOEFF_H */
