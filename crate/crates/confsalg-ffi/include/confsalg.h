#ifndef CONFSALG_H
#define CONFSALG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Axiom families for [`confsalg_algebra_verify`], combined as bit flags.
#define CONFSALG_AXIOMS_P 1

#define CONFSALG_AXIOMS_H 2

#define CONFSALG_AXIOMS_C 4

// Status codes; the first four agree with the command-line exit codes.
typedef enum ConfsalgStatus {
  CONFSALG_STATUS_OK = 0,
  // A requested check ran and found violations.
  CONFSALG_STATUS_CHECK_FAILED = 1,
  // Malformed input: unknown name, bad scalar, bad JSON, non-UTF-8 text.
  CONFSALG_STATUS_INVALID_INPUT = 2,
  // The solver or a structural computation failed.
  CONFSALG_STATUS_SOLVER_FAILURE = 3,
  // A required pointer argument was null.
  CONFSALG_STATUS_NULL_POINTER = 4,
  // An internal panic was caught at the boundary.
  CONFSALG_STATUS_PANIC = 5,
} ConfsalgStatus;

// Opaque handle to a reduced algebra.
typedef struct ConfsalgAlgebra ConfsalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread (empty if none). The
// pointer stays valid until the next failing call on the same thread.
const char *confsalg_last_error(void);

// Builds a catalog algebra. `name` is one of `Vir, K1, K2, K3, S2, W2, N4,
// N4alpha, CK6`; `alpha` (scalar grammar, may be null) is accepted only for
// `N4alpha`, where null means the symbolic parameter.
//
// # Safety
// `name` must be a valid C string, `alpha` null or a valid C string, and
// `out` a valid pointer.
enum ConfsalgStatus confsalg_catalog_build(const char *name,
                                           const char *alpha,
                                           struct ConfsalgAlgebra **out);

// Parses an algebra from its JSON interchange form.
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum ConfsalgStatus confsalg_algebra_from_json(const char *json, struct ConfsalgAlgebra **out);

// Writes the canonical JSON of the algebra to `*out` (free with
// [`confsalg_string_free`]).
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer.
enum ConfsalgStatus confsalg_algebra_to_json(const struct ConfsalgAlgebra *alg, char **out);

// Dimension of the reduced subspace.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer.
enum ConfsalgStatus confsalg_algebra_dim(const struct ConfsalgAlgebra *alg, size_t *out);

// Runs the axiom families selected by `axioms` (bit flags
// `CONFSALG_AXIOMS_*`) with bounds `m_max`, `n_max` and ∂-degree `d_max`.
// Writes the number of failed instances to `*failed` (may be null) and
// returns `CheckFailed` when it is nonzero.
//
// # Safety
// `alg` must be a live handle; `failed` null or a valid pointer.
enum ConfsalgStatus confsalg_algebra_verify(const struct ConfsalgAlgebra *alg,
                                            uint32_t axioms,
                                            uint32_t m_max,
                                            uint32_t n_max,
                                            uint32_t d_max,
                                            size_t *failed);

// Decides simplicity of a physical algebra with numeric structure constants.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer.
enum ConfsalgStatus confsalg_algebra_is_simple(const struct ConfsalgAlgebra *alg, bool *out);

// Writes the characteristic polynomial of the V∧V Gram matrix (scalar
// grammar in the variable `t`) to `*out`; the empty string when
// `dim V < 2`.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer.
enum ConfsalgStatus confsalg_algebra_charpoly(const struct ConfsalgAlgebra *alg, char **out);

// Releases a handle (null is ignored).
//
// # Safety
// `alg` must be null or a handle not yet freed.
void confsalg_algebra_free(struct ConfsalgAlgebra *alg);

// Releases a string returned by this library (null is ignored).
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void confsalg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFSALG_H */
