#ifndef TORSIONPAIR_H
#define TORSIONPAIR_H

/* This file is generated by cbindgen from torsionpair-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes: 0 = success, 1 = mathematical failure, 2 = invalid input,
// 3 = null pointer, 4 = result does not fit in the output type.
typedef enum tp_status_t {
  TP_STATUS_T_OK = 0,
  TP_STATUS_T_MATH_ERROR = 1,
  TP_STATUS_T_INPUT_ERROR = 2,
  TP_STATUS_T_NULL_POINTER = 3,
  TP_STATUS_T_OVERFLOW = 4,
} tp_status_t;

// Opaque character of a finite group, valued in Q/Z.
typedef struct tp_character_t tp_character_t;

// Opaque extension class `0 -> Z -> E -> K1 -> 0`.
typedef struct tp_extension_t tp_extension_t;

// Opaque finitely generated abelian group in normal form.
typedef struct tp_group_t tp_group_t;

// Entry of the coefficient-morphism table: the group is cyclic of
// `group_order` (0 encodes Z, 1 the trivial group) and the canonical
// generator acts as `[1] -> [image_of_one]` between the recorded moduli
// (again 0 encodes Z).
typedef struct tp_kk_entry_t {
  uint64_t group_order;
  uint64_t source_modulus;
  uint64_t target_modulus;
  uint64_t image_of_one;
} tp_kk_entry_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message into `buffer` (NUL-terminated, truncated to
// `length` bytes).  Returns the full message length in bytes.
//
// # Safety
// `buffer` must point to at least `length` writable bytes, or be null (in
// which case only the length is returned).
size_t tp_last_error_message(char *buffer, size_t length);

// Create a group `Z^free_rank (+) Z/factors[0] (+) ...`; the factors must
// form a divisibility chain with every entry at least 2.
//
// # Safety
// `factors` must point to `factors_len` readable values (or be null when
// `factors_len` is 0) and `out` must be a valid destination pointer.
enum tp_status_t tp_group_new(size_t free_rank,
                              const int64_t *factors,
                              size_t factors_len,
                              struct tp_group_t **out);

// Normal form of the cokernel of a relation matrix, given row-major with
// `rows * cols` entries; each row is one relation among `cols` generators.
//
// # Safety
// `entries` must point to `rows * cols` readable values (or be null when
// that product is 0) and `out` must be valid.
enum tp_status_t tp_group_from_presentation(const int64_t *entries,
                                            size_t rows,
                                            size_t cols,
                                            struct tp_group_t **out);

// # Safety
// `group` must be a live handle from this library, or null (a no-op).
void tp_group_free(struct tp_group_t *group);

// # Safety
// `group` must be a live handle.
size_t tp_group_free_rank(const struct tp_group_t *group);

// # Safety
// `group` must be a live handle.
size_t tp_group_torsion_len(const struct tp_group_t *group);

// Fetch the `index`-th invariant factor.
//
// # Safety
// `group` must be a live handle and `out` a valid destination.
enum tp_status_t tp_group_torsion_factor(const struct tp_group_t *group,
                                         size_t index,
                                         int64_t *out);

// The extension `0 -> Z --d--> Z -> Z/d -> 0`.
//
// # Safety
// `out` must be a valid destination pointer.
enum tp_status_t tp_extension_mult_by_d(uint64_t d, struct tp_extension_t **out);

// The extension of `k1` by Z classified by one residue per torsion
// generator; the induced character sends generator `i` to
// `[residues[i] / d_i]`.
//
// # Safety
// `k1` must be a live handle, `residues` must hold one value per torsion
// generator of `k1`, and `out` must be valid.
enum tp_status_t tp_extension_from_character_data(const struct tp_group_t *k1,
                                                  const int64_t *residues,
                                                  size_t residues_len,
                                                  struct tp_extension_t **out);

// # Safety
// `extension` must be a live handle from this library, or null.
void tp_extension_free(struct tp_extension_t *extension);

// The pairing character of an extension class, as a new handle.
//
// # Safety
// `extension` must be a live handle and `out` valid.
enum tp_status_t tp_extension_pairing(const struct tp_extension_t *extension,
                                      struct tp_character_t **out);

// # Safety
// `character` must be a live handle from this library, or null.
void tp_character_free(struct tp_character_t *character);

// Number of torsion generators the character is defined on.
//
// # Safety
// `character` must be a live handle.
size_t tp_character_len(const struct tp_character_t *character);

// The value of the character on the `index`-th torsion generator, as a
// reduced fraction.
//
// # Safety
// `character` must be a live handle; `out_num` and `out_den` must be valid.
enum tp_status_t tp_character_value(const struct tp_character_t *character,
                                    size_t index,
                                    int64_t *out_num,
                                    int64_t *out_den);

// # Safety
// `out` must be a valid destination pointer.
enum tp_status_t tp_kk_group(uint64_t n, uint64_t m, uint8_t degree, struct tp_kk_entry_t *out);

// Eta invariant of the circle operator twisted by holonomy `num/den`.
//
// # Safety
// `out_eta` and `out_kernel_dim` must be valid destinations.
enum tp_status_t tp_eta_circle(int64_t num, int64_t den, double *out_eta, size_t *out_kernel_dim);

// Relative eta invariant of two holonomies, certified to a fraction with
// denominator at most `cap` (0 = derive the cap from the inputs).
//
// # Safety
// The three output pointers must be valid destinations.
enum tp_status_t tp_rho_relative(int64_t num1,
                                 int64_t den1,
                                 int64_t num2,
                                 int64_t den2,
                                 uint64_t cap,
                                 int64_t *out_num,
                                 int64_t *out_den,
                                 double *out_residual);

// Logarithmic determinant pairing of two unitary matrices, passed as
// row-major interleaved (re, im) arrays of `2 * dim * dim` doubles each.
//
// # Safety
// `pi` and `sigma` must each point to `2 * dim * dim` readable doubles;
// the three output pointers must be valid.
enum tp_status_t tp_log_det_pairing(const double *pi,
                                    const double *sigma,
                                    size_t dim,
                                    uint64_t cap,
                                    int64_t *out_num,
                                    int64_t *out_den,
                                    double *out_residual);

// Winding-generator check for the mod-m coefficient class over the n x n
// matrix algebra; succeeds exactly when the value certifies to `[1/m]`.
//
// # Safety
// The three output pointers must be valid destinations.
enum tp_status_t tp_zeta_generator_check(uint64_t m,
                                         uint64_t n,
                                         int64_t *out_num,
                                         int64_t *out_den,
                                         double *out_residual);

// Run the three pipelines (extension, spectral, determinant) on the
// order-d class; writes 1 when all agree on `[1/d]`.
//
// # Safety
// `out_ok` must be a valid destination.
enum tp_status_t tp_crosscheck(uint64_t d, uint8_t *out_ok);

// Static library version string (do not free).
const char *tp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORSIONPAIR_H */
