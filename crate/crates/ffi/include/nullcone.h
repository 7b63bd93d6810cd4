#ifndef NULLCONE_H
#define NULLCONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes. `Domain`, `Parameter` and `Resource` equal the CLI exit codes.
 */
typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_DOMAIN = 1,
  NC_STATUS_PARAMETER = 2,
  NC_STATUS_RESOURCE = 3,
  NC_STATUS_INVARIANT = 4,
  NC_STATUS_NULL_POINTER = 5,
  NC_STATUS_INVALID_UTF8 = 6,
} NcStatus;

/**
 * A linear combination of standard monomials.
 */
typedef struct NcCombination NcCombination;

/**
 * Parameters `(k, n)` of the nullcone `N_{k,2n}`.
 */
typedef struct NcNullcone NcNullcone;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *nc_last_error_message(void);

/**
 * Straightens a product such as `"[1:2],[2:1]"` in `C[M_{n,m}]` with the
 * default weight base.
 *
 * # Safety
 * `product` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum NcStatus nc_straighten(uint32_t n,
                            uint32_t m,
                            const char *product,
                            struct NcCombination **out);

/**
 * Number of terms, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a handle from this library.
 */
uintptr_t nc_combination_len(const struct NcCombination *c);

/**
 * JSON form `{"terms":[{"coef","tableau"}],"weight_base"}`.
 *
 * # Safety
 * `c` must be a handle from this library and `out` a valid pointer.
 */
enum NcStatus nc_combination_to_json(const struct NcCombination *c, char **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not freed before.
 */
void nc_combination_free(struct NcCombination *c);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum NcStatus nc_nullcone_new(uint32_t k, uint32_t n, struct NcNullcone **out);

/**
 * # Safety
 * `ctx` must be null or a handle from this library not freed before.
 */
void nc_nullcone_free(struct NcNullcone *ctx);

/**
 * Number of N-standard monomials of a shape given as `"2,1"`.
 *
 * # Safety
 * `ctx` must be a handle from this library, `shape` a valid string and
 * `out` a valid pointer.
 */
enum NcStatus nc_nullcone_count(const struct NcNullcone *ctx, const char *shape, uint64_t *out);

/**
 * Rewrites a product of minors over `M_{k,2n}` as N-standard monomials.
 *
 * # Safety
 * `ctx` must be a handle from this library, `product` a valid string and
 * `out` a valid pointer.
 */
enum NcStatus nc_nullcone_straighten(const struct NcNullcone *ctx,
                                     const char *product,
                                     struct NcCombination **out);

/**
 * A nullcone point as a JSON matrix of `"a/b"` strings.
 *
 * # Safety
 * `ctx` must be a handle from this library and `out` a valid pointer.
 */
enum NcStatus nc_nullcone_sample(const struct NcNullcone *ctx, uint64_t seed, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not freed before.
 */
void nc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NULLCONE_H */
