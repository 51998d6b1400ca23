#ifndef GIRTH8_H
#define GIRTH8_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
#define GIRTH8_OK 0

/**
 * A pointer argument was null.
 */
#define GIRTH8_ERR_NULL 1

/**
 * An argument was out of range or otherwise invalid.
 */
#define GIRTH8_ERR_INVALID 2

/**
 * The requested object could not be constructed.
 */
#define GIRTH8_ERR_CONSTRUCT 3

/**
 * Opaque finite-field handle.
 */
typedef struct Girth8Field Girth8Field;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build F_{p^e}. On success writes a handle that must be released with
 * `girth8_field_free`.
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
int girth8_field_new(uint64_t p, uint32_t e, struct Girth8Field **out);

/**
 * Release a field handle. Null is a no-op.
 * # Safety
 * `field` must be null or a handle from `girth8_field_new` not yet freed.
 */
void girth8_field_free(struct Girth8Field *field);

/**
 * Field order q = p^e.
 * # Safety
 * `field` must be a live handle; `out_q` must be valid for one u64 write.
 */
int girth8_field_order(const struct Girth8Field *field, uint64_t *out_q);

/**
 * Whether A_k = X^k[(X+1)^k - X^k] permutes the field (brute force).
 * # Safety
 * `field` must be a live handle; `out_is_pp` must be valid for one int write.
 */
int girth8_is_pp_a(const struct Girth8Field *field, uint64_t k, int *out_is_pp);

/**
 * Whether B_k = [(X+1)^{2k} - 1]X^{q-1-k} - 2X^{q-1} permutes the field
 * (brute force).
 * # Safety
 * `field` must be a live handle; `out_is_pp` must be valid for one int write.
 */
int girth8_is_pp_b(const struct Girth8Field *field, uint64_t k, int *out_is_pp);

/**
 * Same tests via Hermite's criterion; needs only (q, p, k).
 * # Safety
 * `out_is_pp` must be valid for one int write.
 */
int girth8_is_pp_a_hermite(uint64_t q, uint64_t p, uint64_t k, int *out_is_pp);

/**
 * # Safety
 * `out_is_pp` must be valid for one int write.
 */
int girth8_is_pp_b_hermite(uint64_t q, uint64_t p, uint64_t k, int *out_is_pp);

/**
 * alpha(p): smallest positive even u with C(u, u/2) = (-1)^{u/2} 2^u mod p.
 * # Safety
 * `out_alpha` must be valid for one u64 write.
 */
int girth8_alpha(uint64_t p, uint64_t *out_alpha);

/**
 * Girth of G_q(X^{m1}Y^{n1}, X^{m2}Y^{n2}) by exhaustive BFS when
 * `symmetry_mode` is 0, or rooted only at representative points when 1.
 * Writes 0 when the graph is acyclic.
 * # Safety
 * `field` must be a live handle; `out_girth` must be valid for one u32 write.
 */
int girth8_girth(const struct Girth8Field *field,
                 uint64_t m1,
                 uint64_t n1,
                 uint64_t m2,
                 uint64_t n2,
                 int symmetry_mode,
                 uint32_t *out_girth);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GIRTH8_H */
