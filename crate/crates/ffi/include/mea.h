#ifndef MEA_H
#define MEA_H

#include <stdint.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum MeaStatus {
  MEA_STATUS_OK = 0,
  MEA_STATUS_NULL_POINTER = 1,
  MEA_STATUS_SIZE_TOO_SMALL = 2,
  MEA_STATUS_SIZE_MISMATCH = 3,
  MEA_STATUS_INVALID_RANGE = 4,
  MEA_STATUS_INVALID_PERMUTATION = 5,
  MEA_STATUS_BUFFER_TOO_SMALL = 6,
  MEA_STATUS_INTERNAL = 7,
} MeaStatus;

typedef enum MeaAlternation {
  MEA_ALTERNATION_DOWN_UP = 0,
  MEA_ALTERNATION_UP_DOWN = 1,
  MEA_ALTERNATION_NOT_ALTERNATING = 2,
  MEA_ALTERNATION_TRIVIAL = 3,
} MeaAlternation;

/*
 Opaque permutation handle.
 */
typedef struct MeaPermutation MeaPermutation;

/*
 Prefix, child size and shift map of one recursion step.

 Only the first `prefix_len` entries of `prefix` are meaningful.
 */
typedef struct MeaDecomposition {
  uint64_t n;
  /*
   1 when `n` is odd, 0 when even.
   */
  uint8_t odd;
  uint64_t prefix_len;
  uint64_t prefix[4];
  uint64_t child_n;
  uint64_t threshold;
  uint64_t low_offset;
  uint64_t high_offset;
} MeaDecomposition;

/*
 Pass/fail totals of a range verification.
 */
typedef struct MeaVerifySummary {
  uint64_t passed;
  uint64_t failed;
} MeaVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failed call on this thread, or null.

 The pointer stays valid until the next call into this library on the same thread.
 */
const char *mea_last_error_message(void);

/*
 Builds `π_n`; `naive != 0` selects the step-by-step simulator.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum MeaStatus mea_generate(uint64_t n, uint8_t naive, struct MeaPermutation **out);

/*
 Copies `len` values into a new handle after checking they form a permutation of `1..=len`.

 # Safety
 `values` must point to `len` readable `u64`s (or may be null when `len == 0`);
 `out` must be valid for one handle.
 */
enum MeaStatus mea_permutation_from_values(const uint64_t *values,
                                           uint64_t len,
                                           struct MeaPermutation **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must be null or a handle from this library that has not been freed.
 */
void mea_permutation_free(struct MeaPermutation *p);

/*
 Size of the permutation; 0 for a null handle.

 # Safety
 `p` must be null or a live handle.
 */
uint64_t mea_permutation_len(const struct MeaPermutation *p);

/*
 Copies the one-line notation into `buf`, which must hold at least
 `mea_permutation_len(p)` entries.

 # Safety
 `p` must be a live handle; `buf` must be valid for `buf_len` writes.
 */
enum MeaStatus mea_permutation_values(const struct MeaPermutation *p,
                                      uint64_t *buf,
                                      uint64_t buf_len);

/*
 Positional inverse of `p`.

 # Safety
 `p` must be a live handle; `out` must be valid for one handle.
 */
enum MeaStatus mea_permutation_inverse(const struct MeaPermutation *p, struct MeaPermutation **out);

/*
 `π_n⁻¹` built from the recursive inverse description.

 # Safety
 `out` must be valid for one handle.
 */
enum MeaStatus mea_inverse_recursive(uint64_t n, struct MeaPermutation **out);

/*
 # Safety
 `p` must be a live handle; `out` must be valid for one write.
 */
enum MeaStatus mea_inversion_count(const struct MeaPermutation *p, uint64_t *out);

/*
 `⌊(n−1)²/4⌋`.
 */
uint64_t mea_inversion_formula(uint64_t n);

/*
 Writes descent positions into `buf` and their count into `out_count`.

 When `buf_len` is too small nothing is copied, `out_count` still receives
 the required size, and `BufferTooSmall` is returned.

 # Safety
 `p` must be a live handle, `out_count` valid for one write, `buf` valid
 for `buf_len` writes (may be null when `buf_len == 0`).
 */
enum MeaStatus mea_descent_set(const struct MeaPermutation *p,
                               uint64_t *buf,
                               uint64_t buf_len,
                               uint64_t *out_count);

/*
 # Safety
 `p` must be a live handle; `out` must be valid for one write.
 */
enum MeaStatus mea_classify_alternation(const struct MeaPermutation *p, enum MeaAlternation *out);

/*
 +1 or −1; 0 for a null handle.

 # Safety
 `p` must be null or a live handle.
 */
int32_t mea_sign(const struct MeaPermutation *p);

/*
 −1 when `n ≡ 3 (mod 4)`, else +1.
 */
int32_t mea_sign_formula(uint64_t n);

/*
 # Safety
 `out` must be valid for one write.
 */
enum MeaStatus mea_decompose(uint64_t n, struct MeaDecomposition *out);

/*
 Runs the range verification and reports pass/fail totals.

 A completed run returns `Ok` even when checks fail; inspect `out.failed`.

 # Safety
 `out` must be valid for one write.
 */
enum MeaStatus mea_verify_range(uint64_t n_min,
                                uint64_t n_max,
                                uint64_t oracle_cap,
                                struct MeaVerifySummary *out);

/*
 Statistics of `p` as a JSON object with fields `n`, `values`,
 `inversions`, `descents`, `sign`, `alternation`, `cycle_type` and `order`
 (a decimal string). Free the result with [`mea_string_free`].

 # Safety
 `p` must be a live handle; `out` must be valid for one write.
 */
enum MeaStatus mea_stats_json(const struct MeaPermutation *p, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library that has not been freed.
 */
void mea_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MEA_H */
