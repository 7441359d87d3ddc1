#ifndef ORBITCONE_H
#define ORBITCONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OcStatus {
  OC_STATUS_OK = 0,
  OC_STATUS_NULL_POINTER = 1,
  OC_STATUS_INVALID_UTF8 = 2,
  OC_STATUS_PARSE = 3,
  OC_STATUS_UNSUPPORTED = 4,
  OC_STATUS_DIMENSION_MISMATCH = 5,
  OC_STATUS_INVALID_INPUT = 6,
  OC_STATUS_BUFFER_TOO_SMALL = 7,
  OC_STATUS_NUMERICAL = 8,
  OC_STATUS_PANIC = 9,
} OcStatus;

typedef enum OcClass {
  OC_CLASS_ZERO = 0,
  OC_CLASS_ELLIPTIC = 1,
  OC_CLASS_HYPERBOLIC = 2,
  OC_CLASS_NILPOTENT = 3,
  OC_CLASS_MIXED = 4,
} OcClass;

typedef enum OcVerdict {
  OC_VERDICT_YES = 0,
  OC_VERDICT_NO = 1,
  OC_VERDICT_UNKNOWN = 2,
} OcVerdict;

/**
 * Named cones of `sl(2,R)`; `OTHER` for anything without a name.
 */
typedef enum OcCone {
  OC_CONE_ZERO = 0,
  OC_CONE_NIL_PLUS = 1,
  OC_CONE_NIL_MINUS = 2,
  OC_CONE_NIL = 3,
  OC_CONE_HYP_CLOSURE = 4,
  OC_CONE_ELL_PLUS_CLOSURE = 5,
  OC_CONE_ELL_MINUS_CLOSURE = 6,
  OC_CONE_FULL = 7,
  OC_CONE_OTHER = 8,
} OcCone;

/**
 * Opaque Lie algebra.
 */
typedef struct OcAlgebra OcAlgebra;

/**
 * Opaque subalgebra embedding.
 */
typedef struct OcEmbedding OcEmbedding;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *oc_last_error(void);

/**
 * Builds an algebra from a name such as `sl2R`, `su(2,1)` or `so(3,2)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OcStatus oc_algebra_new(const char *spec, struct OcAlgebra **out);

/**
 * # Safety
 * `alg` must come from [`oc_algebra_new`] and not be freed yet, or be NULL.
 */
void oc_algebra_free(struct OcAlgebra *alg);

/**
 * Dimension of the algebra, 0 for NULL.
 *
 * # Safety
 * `alg` must be a live handle or NULL.
 */
size_t oc_algebra_dim(const struct OcAlgebra *alg);

/**
 * Classifies the covector with coordinates `coords[0..len]`.
 *
 * # Safety
 * `alg` must be a live handle, `coords` must point to `len` doubles and
 * `out` must be valid.
 */
enum OcStatus oc_classify(const struct OcAlgebra *alg,
                          const double *coords,
                          size_t len,
                          enum OcClass *out);

/**
 * Builds an embedding from a pair spec such as `sl2R|a` or
 * `so(4,2)|blocks[(1,1),(3,1)]`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OcStatus oc_embedding_new(const char *spec, struct OcEmbedding **out);

/**
 * # Safety
 * `e` must come from [`oc_embedding_new`] and not be freed yet, or be NULL.
 */
void oc_embedding_free(struct OcEmbedding *e);

/**
 * Dimensions of the ambient algebra and the subalgebra.
 *
 * # Safety
 * `e` must be a live handle; `ambient` and `sub` must be valid pointers.
 */
enum OcStatus oc_embedding_dims(const struct OcEmbedding *e, size_t *ambient, size_t *sub);

/**
 * Writes `q(xi)` into `out[0..out_len]`; `out_len` must equal the
 * subalgebra dimension.
 *
 * # Safety
 * `e` must be a live handle; `xi` must point to `len` doubles and `out` to
 * `out_len` writable doubles.
 */
enum OcStatus oc_pullback(const struct OcEmbedding *e,
                          const double *xi,
                          size_t len,
                          double *out,
                          size_t out_len);

/**
 * Whether `L2(G/H)` is weakly contained in `L2(G)`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum OcStatus oc_bk_weak_containment(const struct OcEmbedding *e, enum OcVerdict *out);

/**
 * Whether the orthocomplement of the subalgebra meets every Cartan class.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum OcStatus oc_saturation(const struct OcEmbedding *e,
                            size_t budget,
                            uint64_t seed,
                            enum OcVerdict *out);

/**
 * Wave-front cone of a catalog representation such as `sigma_disc(3,+)`.
 *
 * # Safety
 * `label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OcStatus oc_wavefront(const char *label, enum OcCone *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITCONE_H */
