/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef LRB_H
#define LRB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// `ℱ_n` or `ℱ_n^{(q)}`, already checked against the size guards.
typedef struct LrbAlgebra LrbAlgebra;

typedef int32_t LrbStatus;

#define LRB_OK 0

// A required pointer argument was NULL.
#define LRB_NULL 1

#define LRB_INVALID_ARGUMENT 2

// The input is larger than the exact computation is allowed to handle.
#define LRB_GUARD 3

// A computation contradicted the theory it checks, or a report failed.
#define LRB_VERIFICATION_FAILED 4

#define LRB_INTERNAL 5

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates the algebra of `ℱ_n` (injective words on `n` letters).
//
// # Safety
// `out` must be valid for writes.
LrbStatus lrb_algebra_new_words(size_t n, struct LrbAlgebra **out);

// Creates the algebra of `ℱ_n^{(q)}` (flags in `F_q^n`, `q` prime).
//
// # Safety
// `out` must be valid for writes.
LrbStatus lrb_algebra_new_flags(size_t n, uint32_t q, struct LrbAlgebra **out);

// Releases an algebra; NULL is ignored.
//
// # Safety
// `algebra` must come from a constructor and not have been freed.
void lrb_algebra_free(struct LrbAlgebra *algebra);

// Number of monoid elements, the dimension of the algebra.
//
// # Safety
// `algebra` must be a live handle and `out` valid for writes.
LrbStatus lrb_algebra_dim(const struct LrbAlgebra *algebra, uint64_t *out);

// Multiplicity of the `j`-th eigenvalue on `space` (`"full"`, `"chamber"`
// or `"stratum:L"`), computed from the operator.
//
// # Safety
// `algebra` must be a live handle, `space` a NUL-terminated string and
// `out` valid for writes.
LrbStatus lrb_eigenspace_dim(const struct LrbAlgebra *algebra,
                             size_t j,
                             const char *space,
                             int64_t *out);

// The multiplicity the theorems predict for the same arguments.
//
// # Safety
// As for [`lrb_eigenspace_dim`].
LrbStatus lrb_predicted_dim(const struct LrbAlgebra *algebra,
                            size_t j,
                            const char *space,
                            int64_t *out);

// Sets `*out` to whether `Π(X − λ_j)` is exactly the minimal polynomial
// of `x` on the algebra.
//
// # Safety
// `algebra` must be a live handle and `out` valid for writes.
LrbStatus lrb_minpoly_verify(const struct LrbAlgebra *algebra, bool *out);

// The spectral report on `space` as JSON. Returns
// `LRB_VERIFICATION_FAILED`, still filling `*out`, if any entry fails.
//
// # Safety
// `algebra` must be a live handle, `space` a NUL-terminated string and
// `out` valid for writes.
LrbStatus lrb_spectrum_json(const struct LrbAlgebra *algebra, const char *space, char **out);

// `𝔡_n` in the Schur basis by definition `A`, `B`, `C` or `D`, printed
// like `s(2,1)`.
//
// # Safety
// `out` must be valid for writes.
LrbStatus lrb_derangement_sf(size_t n, char definition, char **out);

// `S_q(n, k)` (`tilde == false`) or `S̃_q(n, k)` as a polynomial string
// such as `2 + q`.
//
// # Safety
// `out` must be valid for writes.
LrbStatus lrb_q_stirling(size_t n, size_t k, bool tilde, char **out);

// Runs the verification grid and returns its JSON report. The status is
// `LRB_VERIFICATION_FAILED` (with `*out` filled) when a check fails.
//
// # Safety
// `out` must be valid for writes.
LrbStatus lrb_verify_json(bool extended, char **out);

// Releases a string returned by this library; NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void lrb_string_free(char *s);

// The last error message on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *lrb_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LRB_H */
