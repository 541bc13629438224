#ifndef HADAMARD_PD_H
#define HADAMARD_PD_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  HPD_STATUS_OK = 0,
  HPD_STATUS_NULL_POINTER = 1,
  HPD_STATUS_INVALID_ARGUMENT = 2,
  HPD_STATUS_LENGTH_MISMATCH = 3,
  HPD_STATUS_PARSE_ERROR = 4,
  HPD_STATUS_NOT_AUTOMORPHISM = 5,
  HPD_STATUS_BUDGET_EXCEEDED = 6,
  HPD_STATUS_BUFFER_TOO_SMALL = 7,
  HPD_STATUS_INTERNAL = 8,
} HpdStatus;

/**
 * A binary or Z4-linear Hadamard code.
 */
typedef struct HpdCode HpdCode;

/**
 * A PD-set together with the code it belongs to.
 */
typedef struct HpdPdSet HpdPdSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on this thread.
 */
const char *hpd_last_error(void);

/**
 * The binary Hadamard code of length `2^m`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
HpdStatus hpd_code_binary_new(uint32_t m, HpdCode **out);

/**
 * The Z4-linear Hadamard code of type `2^γ 4^δ`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
HpdStatus hpd_code_z4_new(size_t gamma, size_t delta, HpdCode **out);

/**
 * # Safety
 * `code` must be null or a handle from this library, not yet freed.
 */
void hpd_code_free(HpdCode *code);

/**
 * Length, dimension (information set size) and error capability `t`.
 *
 * # Safety
 * `code` must be a live handle; each out pointer must be null or valid.
 */
HpdStatus hpd_code_params(const HpdCode *code, size_t *length, size_t *dimension, size_t *t);

/**
 * Writes the 1-based information set into `buf` (capacity `cap`) and its
 * size into `len`.
 *
 * # Safety
 * `code` must be a live handle, `buf` valid for `cap` writes, `len` valid.
 */
HpdStatus hpd_code_info_set(const HpdCode *code, size_t *buf, size_t cap, size_t *len);

/**
 * The codeword taking `values` on the information set.
 *
 * # Safety
 * `values` must hold `k` bytes, `out` room for `out_cap` bytes.
 */
HpdStatus hpd_code_encode(const HpdCode *code,
                          const uint8_t *values,
                          size_t k,
                          uint8_t *out,
                          size_t out_cap);

/**
 * The explicit PD-set of the code: the binary one for `H_m` (m >= 3), or
 * the doubled Z4 one for `H_{γ,δ}` (δ >= 3).
 *
 * # Safety
 * `code` must be a live handle and `out` valid for writes.
 */
HpdStatus hpd_pdset_explicit(const HpdCode *code, HpdPdSet **out);

/**
 * Loads a PD-set from its JSON file format, checking every permutation
 * against the named code.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
HpdStatus hpd_pdset_from_json(const char *json, HpdPdSet **out);

/**
 * Serializes to the JSON file format; release the string with
 * [`hpd_string_free`].
 *
 * # Safety
 * `pdset` must be a live handle and `out` valid for writes.
 */
HpdStatus hpd_pdset_to_json(const HpdPdSet *pdset, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hpd_string_free(char *s);

/**
 * # Safety
 * `pdset` must be null or a handle from this library, not yet freed.
 */
void hpd_pdset_free(HpdPdSet *pdset);

/**
 * Number of permutations and the claimed `s`.
 *
 * # Safety
 * `pdset` must be a live handle; each out pointer must be null or valid.
 */
HpdStatus hpd_pdset_params(const HpdPdSet *pdset, size_t *size, size_t *s);

/**
 * Exhaustive check over all s-subsets with at most `budget` subsets
 * (0 selects the default). On failure `witness`, if non-null, receives the
 * lexicographically least uncovered subset (room for `s` entries).
 *
 * # Safety
 * `pdset` must be a live handle, `passed` valid, `witness` null or valid
 * for `s` writes.
 */
HpdStatus hpd_pdset_verify(const HpdPdSet *pdset,
                           size_t s,
                           uint64_t budget,
                           bool *passed,
                           size_t *witness);

/**
 * Permutation-decodes `word` (length `n`). On success `decoded` is set and
 * the codeword written to `out`; otherwise `decoded` is false.
 *
 * # Safety
 * `pdset` must be a live handle, `word` valid for `n` reads, `out` for
 * `out_cap` writes, `decoded` valid.
 */
HpdStatus hpd_decode(const HpdPdSet *pdset,
                     const uint8_t *word,
                     size_t n,
                     uint8_t *out,
                     size_t out_cap,
                     bool *decoded);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HADAMARD_PD_H */
