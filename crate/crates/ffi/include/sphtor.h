#ifndef SPHTOR_H
#define SPHTOR_H

#include <stddef.h>
#include <stdint.h>

#define SPHTOR_OK 0

#define SPHTOR_EWEIGHT_NO_ARC_MODEL 1

#define SPHTOR_EINVALID_ARC 2

#define SPHTOR_EWEIGHT_MISMATCH 3

#define SPHTOR_ENO_EXTENSION 4

#define SPHTOR_ENOT_IN_HAMMOCK 5

#define SPHTOR_ENON_ORTHOGONAL 6

#define SPHTOR_ENON_CONVERGENCE 7

#define SPHTOR_EPARAMS_MISMATCH 8

#define SPHTOR_ETOO_LARGE 9

#define SPHTOR_EVALIDATION 10

#define SPHTOR_EEMPTY_INPUT 11

#define SPHTOR_ENULL_POINTER 100

#define SPHTOR_EOUT_OF_RANGE 101

#define SPHTOR_EPANIC 102

#define SPHTOR_VERDICT_TORSION_CLASS 0

#define SPHTOR_VERDICT_NOT_CLOSED 1

#define SPHTOR_VERDICT_NOT_CONTRAVARIANTLY_FINITE 2

/**
 * A finite set of arcs of one weight, plus any fountains produced by a closure.
 */
typedef struct SphtorArcSet SphtorArcSet;

/**
 * A validated orbit category `C_m(A_n)`.
 */
typedef struct SphtorOrbit SphtorOrbit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *sphtor_last_error_message(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void sphtor_string_free(char *s);

/**
 * 1 if `{x, y}` is an admissible arc for weight `w`, else 0.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int sphtor_is_admissible(int64_t w, int64_t x, int64_t y, int *out);

/**
 * `dim Hom(a, b)` for arcs `a = {a0, a1}`, `b = {b0, b1}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int sphtor_hom_dim(int64_t w, int64_t a0, int64_t a1, int64_t b0, int64_t b1, uint32_t *out);

/**
 * `dim Ext^1(b, a)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int sphtor_ext_dim(int64_t w, int64_t b0, int64_t b1, int64_t a0, int64_t a1, uint32_t *out);

/**
 * Creates an empty arc set.
 *
 * # Safety
 * `out` must be a valid pointer; free the result with [`sphtor_arcset_free`].
 */
int sphtor_arcset_new(int64_t w, struct SphtorArcSet **out);

/**
 * # Safety
 * `set` must come from this library and not be used afterwards.
 */
void sphtor_arcset_free(struct SphtorArcSet *set);

/**
 * Adds the arc `{x, y}`.
 *
 * # Safety
 * `set` must be a live handle.
 */
int sphtor_arcset_add(struct SphtorArcSet *set, int64_t x, int64_t y);

/**
 * Number of finite arcs (fountains are not counted).
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
int sphtor_arcset_len(const struct SphtorArcSet *set, uintptr_t *out);

/**
 * Number of fountains.
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
int sphtor_arcset_fountain_count(const struct SphtorArcSet *set, uintptr_t *out);

/**
 * The `index`-th finite arc in sorted order, as its endpoints `(t, u)`.
 *
 * # Safety
 * `set` must be a live handle; `t` and `u` valid.
 */
int sphtor_arcset_get(const struct SphtorArcSet *set, uintptr_t index, int64_t *t, int64_t *u);

/**
 * Middle terms of extensions between two arcs, in both directions.
 *
 * # Safety
 * `out` must be valid; free the result with [`sphtor_arcset_free`].
 */
int sphtor_e_set(int64_t w,
                 int64_t a0,
                 int64_t a1,
                 int64_t b0,
                 int64_t b1,
                 struct SphtorArcSet **out);

/**
 * Extension closure of `set` as a new handle.
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
int sphtor_arcset_closure(const struct SphtorArcSet *set, struct SphtorArcSet **out);

/**
 * Torsion-class verdict, one of the `SPHTOR_VERDICT_*` values.
 *
 * # Safety
 * `set` must be a live handle and `verdict` valid.
 */
int sphtor_arcset_torsion_verdict(const struct SphtorArcSet *set, int *verdict);

/**
 * JSON document of the set; free with [`sphtor_string_free`].
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
int sphtor_arcset_to_json(const struct SphtorArcSet *set, char **out);

/**
 * `dim Hom(X, Y)` in the tube category for `X = Σ^{a_shift} X_{a_level}`.
 */
uint64_t sphtor_t1_hom_dim(int64_t a_shift, uint64_t a_level, int64_t b_shift, uint64_t b_level);

/**
 * Builds and validates `C_m(A_n)`.
 *
 * # Safety
 * `out` must be valid; free the result with [`sphtor_orbit_free`].
 */
int sphtor_orbit_new(int64_t n, int64_t m, struct SphtorOrbit **out);

/**
 * # Safety
 * `orbit` must come from this library and not be used afterwards.
 */
void sphtor_orbit_free(struct SphtorOrbit *orbit);

/**
 * Number of indecomposables.
 *
 * # Safety
 * `orbit` must be a live handle and `out` valid.
 */
int sphtor_orbit_len(const struct SphtorOrbit *orbit, uintptr_t *out);

/**
 * m-diagonal `{i, j}` of the `index`-th indecomposable.
 *
 * # Safety
 * `orbit` must be a live handle; `i` and `j` valid.
 */
int sphtor_orbit_diagonal(const struct SphtorOrbit *orbit, uintptr_t index, int64_t *i, int64_t *j);

/**
 * `dim Hom(a, b)` between m-diagonals.
 *
 * # Safety
 * `orbit` must be a live handle and `out` valid.
 */
int sphtor_orbit_hom(const struct SphtorOrbit *orbit,
                     int64_t ai,
                     int64_t aj,
                     int64_t bi,
                     int64_t bj,
                     uint64_t *out);

/**
 * `dim Ext^1(b, a)` between m-diagonals.
 *
 * # Safety
 * `orbit` must be a live handle and `out` valid.
 */
int sphtor_orbit_ext(const struct SphtorOrbit *orbit,
                     int64_t bi,
                     int64_t bj,
                     int64_t ai,
                     int64_t aj,
                     uint64_t *out);

/**
 * Number of torsion classes; fails with `SPHTOR_ETOO_LARGE` past 16 indecomposables.
 *
 * # Safety
 * `orbit` must be a live handle and `out` valid.
 */
int sphtor_orbit_torsion_count(const struct SphtorOrbit *orbit, uintptr_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHTOR_H */
