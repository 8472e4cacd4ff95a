#ifndef PICKERNEL_H
#define PICKERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. The first five values match the exit
 * codes of the command-line tool.
 */
typedef enum PkStatus {
  PK_STATUS_OK = 0,
  PK_STATUS_CHECK_FAILED = 1,
  PK_STATUS_INPUT_ERROR = 2,
  PK_STATUS_INCONSISTENT = 3,
  PK_STATUS_GUARD_EXCEEDED = 4,
  PK_STATUS_NULL_POINTER = 5,
  PK_STATUS_PANIC = 6,
} PkStatus;

/**
 * A finitely generated abelian group in invariant-factor form.
 */
typedef struct PkAbelianGroup PkAbelianGroup;

/**
 * A finite group given by its multiplication table.
 */
typedef struct PkGroup PkGroup;

/**
 * A finitely generated module over a `PkGroup`.
 */
typedef struct PkModule PkModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *pk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pk_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void pk_string_free(char *s);

/**
 * A builtin group (`C6`, `D4`, `S3`, `Q8`, `cyclic(5)`, ...) or a group
 * given as JSON `{"order": n, "table": [[...], ...]}`.
 *
 * # Safety
 * `source` is a NUL-terminated string and `out` a valid pointer.
 */
enum PkStatus pk_group_new(const char *source, struct PkGroup **out);

/**
 * # Safety
 * `g` is null or a live handle from `pk_group_new`.
 */
void pk_group_free(struct PkGroup *g);

/**
 * Order of the group; 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live group handle.
 */
size_t pk_group_order(const struct PkGroup *g);

/**
 * `G/[G, G]`.
 *
 * # Safety
 * `g` is a live group handle and `out` a valid pointer.
 */
enum PkStatus pk_group_abelianization(const struct PkGroup *g, struct PkAbelianGroup **out);

/**
 * A module over `g`: `regular`, `trivial`, `coaugmentation`, `negation`,
 * or JSON `{"ambient_rank", "relations", "action"}`.
 *
 * # Safety
 * `g` is a live group handle, `source` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum PkStatus pk_module_new(const struct PkGroup *g, const char *source, struct PkModule **out);

/**
 * # Safety
 * `m` is null or a live handle from `pk_module_new`.
 */
void pk_module_free(struct PkModule *m);

/**
 * Rank of the ambient lattice; 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live module handle.
 */
size_t pk_module_rank(const struct PkModule *m);

/**
 * `Hⁿ(G, M)` for `n ≤ 2`.
 *
 * # Safety
 * `m` is a live module handle and `out` a valid pointer.
 */
enum PkStatus pk_cohomology(const struct PkModule *m, size_t degree, struct PkAbelianGroup **out);

/**
 * `Pic` of the invariants of the group ring of the coaugmentation quotient.
 * `matches` receives whether it equals `G/[G, G]` and both computations
 * agree; pass null to skip.
 *
 * # Safety
 * `g` is a live group handle, `out` a valid pointer, `matches` null or
 * valid.
 */
enum PkStatus pk_group_ring_pic(const struct PkGroup *g,
                                struct PkAbelianGroup **out,
                                bool *matches);

/**
 * Descent kernel of the real circle `x² + y² = 1` over `C/R`.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum PkStatus pk_circle_descent_kernel(struct PkAbelianGroup **out);

/**
 * `n`-torsion of the Picard group of a conductor square: family `node`
 * with ring `Q` or `Z[1/m]`, or family `cusp` with field `F_q`.
 *
 * # Safety
 * `family` and `ring` are NUL-terminated strings and `out` a valid pointer.
 */
enum PkStatus pk_conductor_torsion(const char *family,
                                   const char *ring,
                                   uint64_t n,
                                   struct PkAbelianGroup **out);

/**
 * Number of classes `M(a)^r`, `a ∈ F_p`, separated by log-derivatives.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum PkStatus pk_inseparable_class_count(uint64_t p, uint64_t q, size_t *out);

/**
 * # Safety
 * `a` is null or a live abelian-group handle.
 */
void pk_abelian_free(struct PkAbelianGroup *a);

/**
 * # Safety
 * `a` is null or a live abelian-group handle.
 */
size_t pk_abelian_free_rank(const struct PkAbelianGroup *a);

/**
 * Number of invariant factors `d₁ | d₂ | …`, all greater than 1.
 *
 * # Safety
 * `a` is null or a live abelian-group handle.
 */
size_t pk_abelian_num_factors(const struct PkAbelianGroup *a);

/**
 * The `i`-th invariant factor, if it fits in 64 bits.
 *
 * # Safety
 * `a` is a live abelian-group handle and `out` a valid pointer.
 */
enum PkStatus pk_abelian_factor(const struct PkAbelianGroup *a, size_t i, uint64_t *out);

/**
 * `{"free_rank": n, "invariant_factors": [...]}`, to be released with
 * `pk_string_free`.
 *
 * # Safety
 * `a` is a live abelian-group handle and `out` a valid pointer.
 */
enum PkStatus pk_abelian_to_json(const struct PkAbelianGroup *a, char **out);

/**
 * Renders as `Z/2 ⊕ Z/2`, `Z^3` or `0`, to be released with
 * `pk_string_free`.
 *
 * # Safety
 * `a` is a live abelian-group handle and `out` a valid pointer.
 */
enum PkStatus pk_abelian_to_string(const struct PkAbelianGroup *a, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PICKERNEL_H */
