//! C ABI over `wkbchain`.
//!
//! A chain is created from a phase ramp or from raw coefficients and handed
//! out as an opaque `WkbChain *`. Every fallible call returns a [`WkbStatus`];
//! on failure the message and, where meaningful, the offending cell index are
//! kept per thread and can be fetched with [`wkb_last_error_message`] and
//! [`wkb_last_error_cell`]. Panics never cross the boundary.
//!
//! Handles are immutable after creation and may be shared between threads for
//! reading; [`wkb_chain_free`] must not race with other calls on the same
//! handle.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use wkbchain::closed_form::delta_p_sum;
use wkbchain::dlw::{coeffs_from_phase, linear_ramp_profile};
use wkbchain::recurrence::{assign_branches, CoefficientSequence, RootPairSequence};
use wkbchain::scattering::{scatter, ScatterSolution};
use wkbchain::wave_split::{transfer_exact, transfer_wkb_direct, transfer_wkb_riccati};
use wkbchain::{ComplexScalar, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WkbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments or input data are invalid (window, phases, coefficients).
    InvalidArgument = 2,
    /// The computation failed: degenerate roots, cascade pole and the like.
    Numerical = 3,
    /// The output buffer is too small; the required length was still reported.
    BufferTooSmall = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// Transfer-matrix flavour used by [`wkb_chain_scatter`] and [`wkb_chain_profile`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WkbVariant {
    Exact = 0,
    Riccati = 1,
    Direct = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbComplex {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexScalar> for WkbComplex {
    fn from(z: ComplexScalar) -> Self {
        WkbComplex { re: z.re, im: z.im }
    }
}

impl From<WkbComplex> for ComplexScalar {
    fn from(z: WkbComplex) -> Self {
        ComplexScalar::new(z.re, z.im)
    }
}

/// Opaque chain: coefficients and their branch-tracked roots.
pub struct WkbChain {
    seq: CoefficientSequence,
    roots: RootPairSequence,
}

struct LastError {
    message: String,
    cell: Option<i64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(message: String, cell: Option<i64>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { message, cell }));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> WkbStatus {
    match err {
        Error::BadWindow(_)
        | Error::BadProfile { .. }
        | Error::BadGeometry { .. }
        | Error::WindowMismatch(_)
        | Error::WindowTooSmall { .. }
        | Error::NonFinite { .. }
        | Error::VanishingCoefficient { .. }
        | Error::LeadMismatch { .. } => WkbStatus::InvalidArgument,
        _ => WkbStatus::Numerical,
    }
}

fn fail(status: WkbStatus, message: impl Into<String>) -> WkbStatus {
    set_error(message.into(), None);
    status
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), WkbStatus>) -> WkbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WkbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(WkbStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: wkbchain::Result<T>) -> Result<T, WkbStatus> {
    r.map_err(|e| {
        set_error(e.to_string(), e.cell());
        status_of(&e)
    })
}

fn chain_ref<'a>(chain: *const WkbChain) -> Result<&'a WkbChain, WkbStatus> {
    // SAFETY: callers pass either null or a handle obtained from this library
    // that has not been freed.
    unsafe { chain.as_ref() }.ok_or_else(|| fail(WkbStatus::NullPointer, "chain handle is null"))
}

fn build(seq: CoefficientSequence, out: *mut *mut WkbChain) -> Result<(), WkbStatus> {
    let roots = lift(assign_branches(&seq))?;
    let handle = Box::into_raw(Box::new(WkbChain { seq, roots }));
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { *out = handle };
    Ok(())
}

/// Chain of `cells` cavities whose phase advance ramps linearly from `phi_in`
/// to `phi_out` between plateaus of `lead_cells` cells. Cells are numbered
/// from 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_from_ramp(
    phi_in: f64,
    phi_out: f64,
    lead_cells: usize,
    cells: usize,
    out: *mut *mut WkbChain,
) -> WkbStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(WkbStatus::NullPointer, "output pointer is null"));
        }
        let profile = lift(linear_ramp_profile(phi_in, phi_out, lead_cells, cells))?;
        build(lift(coeffs_from_phase(&profile))?, out)
    })
}

/// Chain from `len` coefficient pairs of
/// `y[k+2] + f1[k] y[k+1] + f0[k] y[k] = 0`, the first at index `k_min`.
///
/// # Safety
/// `f0` and `f1` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_from_coefficients(
    k_min: i64,
    f0: *const WkbComplex,
    f1: *const WkbComplex,
    len: usize,
    out: *mut *mut WkbChain,
) -> WkbStatus {
    guard(|| {
        if out.is_null() || f0.is_null() || f1.is_null() {
            return Err(fail(WkbStatus::NullPointer, "null pointer argument"));
        }
        // SAFETY: guaranteed by the caller.
        let (f0, f1) = unsafe {
            (
                std::slice::from_raw_parts(f0, len),
                std::slice::from_raw_parts(f1, len),
            )
        };
        let seq = lift(CoefficientSequence::new(
            k_min,
            f0.iter().map(|&z| z.into()).collect(),
            f1.iter().map(|&z| z.into()).collect(),
        ))?;
        build(seq, out)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `chain` must be null or a live handle from this library; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_free(chain: *mut WkbChain) {
    if !chain.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(chain) });
    }
}

/// Number of coefficient cells; 0 for a null handle.
///
/// # Safety
/// `chain` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_len(chain: *const WkbChain) -> usize {
    // SAFETY: see `chain_ref`.
    unsafe { chain.as_ref() }.map_or(0, |c| c.seq.len())
}

fn parse_variant(raw: u32) -> Result<WkbVariant, WkbStatus> {
    match raw {
        0 => Ok(WkbVariant::Exact),
        1 => Ok(WkbVariant::Riccati),
        2 => Ok(WkbVariant::Direct),
        _ => Err(fail(
            WkbStatus::InvalidArgument,
            format!("unknown variant {raw}"),
        )),
    }
}

fn solve(chain: &WkbChain, variant: u32) -> Result<ScatterSolution, WkbStatus> {
    let transfers = lift(match parse_variant(variant)? {
        WkbVariant::Exact => transfer_exact(&chain.roots),
        WkbVariant::Riccati => transfer_wkb_riccati(&chain.roots),
        WkbVariant::Direct => transfer_wkb_direct(&chain.roots),
    })?;
    lift(scatter(&transfers))
}

/// Reflection and transmission for unit incidence from the left. `variant`
/// is one of the [`WkbVariant`] values.
///
/// # Safety
/// `chain` must be a live handle; `r` and `t` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_scatter(
    chain: *const WkbChain,
    variant: u32,
    r: *mut WkbComplex,
    t: *mut WkbComplex,
) -> WkbStatus {
    guard(|| {
        let chain = chain_ref(chain)?;
        if r.is_null() || t.is_null() {
            return Err(fail(WkbStatus::NullPointer, "output pointer is null"));
        }
        let sol = solve(chain, variant)?;
        // SAFETY: checked non-null, writable per contract.
        unsafe {
            *r = sol.r.into();
            *t = sol.t.into();
        }
        Ok(())
    })
}

/// Copies the field `y[k]` for every coefficient cell into `buf`.
///
/// `*written` receives the number of cells. If `capacity` is smaller, nothing
/// is copied and [`WkbStatus::BufferTooSmall`] is returned; pass a null
/// `buf` with capacity 0 to query the length.
///
/// # Safety
/// `chain` must be a live handle, `buf` writable for `capacity` values, `written` writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_profile(
    chain: *const WkbChain,
    variant: u32,
    buf: *mut WkbComplex,
    capacity: usize,
    written: *mut usize,
) -> WkbStatus {
    guard(|| {
        let chain = chain_ref(chain)?;
        if written.is_null() {
            return Err(fail(WkbStatus::NullPointer, "length pointer is null"));
        }
        let sol = solve(chain, variant)?;
        let y = sol.y.values();
        // SAFETY: checked non-null.
        unsafe { *written = y.len() };
        if capacity < y.len() {
            return Err(fail(
                WkbStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, {} needed", y.len()),
            ));
        }
        if buf.is_null() {
            return Err(fail(WkbStatus::NullPointer, "buffer is null"));
        }
        // SAFETY: `buf` holds at least `y.len()` values per contract.
        let out = unsafe { std::slice::from_raw_parts_mut(buf, y.len()) };
        for (o, v) in out.iter_mut().zip(y) {
            *o = (*v).into();
        }
        Ok(())
    })
}

/// Phase-drift sum across the whole chain.
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_chain_delta_p(
    chain: *const WkbChain,
    out: *mut WkbComplex,
) -> WkbStatus {
    guard(|| {
        let chain = chain_ref(chain)?;
        if out.is_null() {
            return Err(fail(WkbStatus::NullPointer, "output pointer is null"));
        }
        let d = lift(delta_p_sum(
            &chain.seq,
            chain.seq.k_min(),
            chain.seq.k_max(),
        ))?;
        // SAFETY: checked non-null.
        unsafe { *out = d.into() };
        Ok(())
    })
}

/// Cell index of the last failure on this thread, if it concerned one cell.
///
/// # Safety
/// `cell` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wkb_last_error_cell(cell: *mut i64) -> bool {
    let found = LAST_ERROR.with(|e| e.borrow().as_ref().and_then(|e| e.cell));
    match (found, cell.is_null()) {
        (Some(k), false) => {
            // SAFETY: checked non-null.
            unsafe { *cell = k };
            true
        }
        _ => false,
    }
}

/// Copies the last failure message on this thread, NUL-terminated and
/// truncated to `capacity`. Returns the full message length plus one (the
/// buffer size needed), or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or writable for `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn wkb_last_error_message(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(err) = e.as_ref() else { return 0 };
        let bytes = err.message.as_bytes();
        if !buf.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            // SAFETY: `buf` is writable for `capacity` bytes and `n < capacity`.
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len() + 1
    })
}
