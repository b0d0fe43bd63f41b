#ifndef WKBCHAIN_H
#define WKBCHAIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

/*
 Result of every fallible call.
 */
typedef enum WkbStatus {
  WKB_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  WKB_STATUS_NULL_POINTER = 1,
  /*
   Arguments or input data are invalid (window, phases, coefficients).
   */
  WKB_STATUS_INVALID_ARGUMENT = 2,
  /*
   The computation failed: degenerate roots, cascade pole and the like.
   */
  WKB_STATUS_NUMERICAL = 3,
  /*
   The output buffer is too small; the required length was still reported.
   */
  WKB_STATUS_BUFFER_TOO_SMALL = 4,
  /*
   An internal panic was caught.
   */
  WKB_STATUS_PANIC = 5,
} WkbStatus;

/*
 Transfer-matrix flavour used by [`wkb_chain_scatter`] and [`wkb_chain_profile`].
 */
typedef enum WkbVariant {
  WKB_VARIANT_EXACT = 0,
  WKB_VARIANT_RICCATI = 1,
  WKB_VARIANT_DIRECT = 2,
} WkbVariant;

/*
 Opaque chain: coefficients and their branch-tracked roots.
 */
typedef struct WkbChain WkbChain;

typedef struct WkbComplex {
  double re;
  double im;
} WkbComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Chain of `cells` cavities whose phase advance ramps linearly from `phi_in`
 to `phi_out` between plateaus of `lead_cells` cells. Cells are numbered
 from 1.

 # Safety
 `out` must be writable.
 */
enum WkbStatus wkb_chain_from_ramp(double phi_in,
                                   double phi_out,
                                   size_t lead_cells,
                                   size_t cells,
                                   struct WkbChain **out);

/*
 Chain from `len` coefficient pairs of
 `y[k+2] + f1[k] y[k+1] + f0[k] y[k] = 0`, the first at index `k_min`.

 # Safety
 `f0` and `f1` must point to `len` readable values; `out` must be writable.
 */
enum WkbStatus wkb_chain_from_coefficients(int64_t k_min,
                                           const struct WkbComplex *f0,
                                           const struct WkbComplex *f1,
                                           size_t len,
                                           struct WkbChain **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `chain` must be null or a live handle from this library; it is invalid afterwards.
 */
void wkb_chain_free(struct WkbChain *chain);

/*
 Number of coefficient cells; 0 for a null handle.

 # Safety
 `chain` must be null or a live handle.
 */
size_t wkb_chain_len(const struct WkbChain *chain);

/*
 Reflection and transmission for unit incidence from the left. `variant`
 is one of the [`WkbVariant`] values.

 # Safety
 `chain` must be a live handle; `r` and `t` must be writable.
 */
enum WkbStatus wkb_chain_scatter(const struct WkbChain *chain,
                                 uint32_t variant,
                                 struct WkbComplex *r,
                                 struct WkbComplex *t);

/*
 Copies the field `y[k]` for every coefficient cell into `buf`.

 `*written` receives the number of cells. If `capacity` is smaller, nothing
 is copied and [`WkbStatus::BufferTooSmall`] is returned; pass a null
 `buf` with capacity 0 to query the length.

 # Safety
 `chain` must be a live handle, `buf` writable for `capacity` values, `written` writable.
 */
enum WkbStatus wkb_chain_profile(const struct WkbChain *chain,
                                 uint32_t variant,
                                 struct WkbComplex *buf,
                                 size_t capacity,
                                 size_t *written);

/*
 Phase-drift sum across the whole chain.

 # Safety
 `chain` must be a live handle; `out` must be writable.
 */
enum WkbStatus wkb_chain_delta_p(const struct WkbChain *chain, struct WkbComplex *out);

/*
 Cell index of the last failure on this thread, if it concerned one cell.

 # Safety
 `cell` must be writable.
 */
bool wkb_last_error_cell(int64_t *cell);

/*
 Copies the last failure message on this thread, NUL-terminated and
 truncated to `capacity`. Returns the full message length plus one (the
 buffer size needed), or 0 when there is no error.

 # Safety
 `buf` must be null or writable for `capacity` bytes.
 */
size_t wkb_last_error_message(char *buf, size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WKBCHAIN_H */
