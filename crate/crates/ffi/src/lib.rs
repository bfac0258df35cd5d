//! C ABI for `mea-core`.
//!
//! Permutations cross the boundary as opaque [`MeaPermutation`] handles
//! owned by the caller and released with [`mea_permutation_free`]. Every
//! fallible function returns a [`MeaStatus`]; on failure a description is
//! available from [`mea_last_error_message`] on the same thread. Values and
//! positions are 1-based, matching the Rust API.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mea_core::{AlternationType, MeaError, Parity, Permutation, Sign, StatsReport};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeaStatus {
    Ok = 0,
    NullPointer = 1,
    SizeTooSmall = 2,
    SizeMismatch = 3,
    InvalidRange = 4,
    InvalidPermutation = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeaAlternation {
    DownUp = 0,
    UpDown = 1,
    NotAlternating = 2,
    Trivial = 3,
}

impl From<AlternationType> for MeaAlternation {
    fn from(a: AlternationType) -> Self {
        match a {
            AlternationType::DownUp => MeaAlternation::DownUp,
            AlternationType::UpDown => MeaAlternation::UpDown,
            AlternationType::NotAlternating => MeaAlternation::NotAlternating,
            AlternationType::Trivial => MeaAlternation::Trivial,
        }
    }
}

/// Opaque permutation handle.
pub struct MeaPermutation(Permutation);

/// Prefix, child size and shift map of one recursion step.
///
/// Only the first `prefix_len` entries of `prefix` are meaningful.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeaDecomposition {
    pub n: u64,
    /// 1 when `n` is odd, 0 when even.
    pub odd: u8,
    pub prefix_len: u64,
    pub prefix: [u64; 4],
    pub child_n: u64,
    pub threshold: u64,
    pub low_offset: u64,
    pub high_offset: u64,
}

/// Pass/fail totals of a range verification.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeaVerifySummary {
    pub passed: u64,
    pub failed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &MeaError) -> MeaStatus {
    match err {
        MeaError::SizeTooSmall { .. } => MeaStatus::SizeTooSmall,
        MeaError::SizeMismatch { .. } => MeaStatus::SizeMismatch,
        MeaError::InvalidRange(_) => MeaStatus::InvalidRange,
        MeaError::NotAPermutation(_) => MeaStatus::InvalidPermutation,
    }
}

fn fail(status: MeaStatus, msg: impl Into<String>) -> MeaStatus {
    set_last_error(msg.into());
    status
}

/// Runs `body`, translating panics into `MeaStatus::Internal`.
fn guard(body: impl FnOnce() -> MeaStatus) -> MeaStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(MeaStatus::Internal, "panic inside mea"),
    }
}

fn to_usize(v: u64) -> Result<usize, MeaStatus> {
    usize::try_from(v).map_err(|_| {
        fail(
            MeaStatus::InvalidRange,
            format!("{v} does not fit in usize"),
        )
    })
}

unsafe fn write_handle(out: *mut *mut MeaPermutation, p: Permutation) {
    *out = Box::into_raw(Box::new(MeaPermutation(p)));
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(MeaStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Message describing the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mea_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `π_n`; `naive != 0` selects the step-by-step simulator.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn mea_generate(
    n: u64,
    naive: u8,
    out: *mut *mut MeaPermutation,
) -> MeaStatus {
    guard(|| {
        non_null!(out);
        let n = try_status!(to_usize(n));
        let p = if naive != 0 {
            mea_core::generate_naive(n)
        } else {
            mea_core::generate_fast(n)
        };
        write_handle(out, p);
        MeaStatus::Ok
    })
}

/// Copies `len` values into a new handle after checking they form a permutation of `1..=len`.
///
/// # Safety
/// `values` must point to `len` readable `u64`s (or may be null when `len == 0`);
/// `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn mea_permutation_from_values(
    values: *const u64,
    len: u64,
    out: *mut *mut MeaPermutation,
) -> MeaStatus {
    guard(|| {
        non_null!(out);
        let len = try_status!(to_usize(len));
        let raw: &[u64] = if len == 0 {
            &[]
        } else {
            non_null!(values);
            std::slice::from_raw_parts(values, len)
        };
        let converted: Result<Vec<usize>, MeaStatus> = raw.iter().map(|&v| to_usize(v)).collect();
        match Permutation::new(try_status!(converted)) {
            Ok(p) => {
                write_handle(out, p);
                MeaStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mea_permutation_free(p: *mut MeaPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Size of the permutation; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mea_permutation_len(p: *const MeaPermutation) -> u64 {
    p.as_ref().map_or(0, |p| p.0.len() as u64)
}

/// Copies the one-line notation into `buf`, which must hold at least
/// `mea_permutation_len(p)` entries.
///
/// # Safety
/// `p` must be a live handle; `buf` must be valid for `buf_len` writes.
#[no_mangle]
pub unsafe extern "C" fn mea_permutation_values(
    p: *const MeaPermutation,
    buf: *mut u64,
    buf_len: u64,
) -> MeaStatus {
    guard(|| {
        non_null!(p);
        let values = (*p).0.values();
        if (buf_len as u128) < values.len() as u128 {
            return fail(
                MeaStatus::BufferTooSmall,
                format!("buffer holds {buf_len} values, need {}", values.len()),
            );
        }
        if values.is_empty() {
            return MeaStatus::Ok;
        }
        non_null!(buf);
        let dst = std::slice::from_raw_parts_mut(buf, values.len());
        for (d, &v) in dst.iter_mut().zip(values) {
            *d = v as u64;
        }
        MeaStatus::Ok
    })
}

/// Positional inverse of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn mea_permutation_inverse(
    p: *const MeaPermutation,
    out: *mut *mut MeaPermutation,
) -> MeaStatus {
    guard(|| {
        non_null!(p, out);
        write_handle(out, mea_core::inverse(&(*p).0));
        MeaStatus::Ok
    })
}

/// `π_n⁻¹` built from the recursive inverse description.
///
/// # Safety
/// `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn mea_inverse_recursive(n: u64, out: *mut *mut MeaPermutation) -> MeaStatus {
    guard(|| {
        non_null!(out);
        let n = try_status!(to_usize(n));
        write_handle(out, mea_core::inverse_recursive(n));
        MeaStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn mea_inversion_count(p: *const MeaPermutation, out: *mut u64) -> MeaStatus {
    guard(|| {
        non_null!(p, out);
        *out = mea_core::inversion_count(&(*p).0);
        MeaStatus::Ok
    })
}

/// `⌊(n−1)²/4⌋`.
#[no_mangle]
pub extern "C" fn mea_inversion_formula(n: u64) -> u64 {
    // Formula in u64 space so that n beyond usize still evaluates.
    let m = n / 2;
    if n % 2 == 1 {
        m.wrapping_mul(m)
    } else {
        m.saturating_sub(1).wrapping_mul(m)
    }
}

/// Writes descent positions into `buf` and their count into `out_count`.
///
/// When `buf_len` is too small nothing is copied, `out_count` still receives
/// the required size, and `BufferTooSmall` is returned.
///
/// # Safety
/// `p` must be a live handle, `out_count` valid for one write, `buf` valid
/// for `buf_len` writes (may be null when `buf_len == 0`).
#[no_mangle]
pub unsafe extern "C" fn mea_descent_set(
    p: *const MeaPermutation,
    buf: *mut u64,
    buf_len: u64,
    out_count: *mut u64,
) -> MeaStatus {
    guard(|| {
        non_null!(p, out_count);
        let des = mea_core::descent_set(&(*p).0);
        *out_count = des.len() as u64;
        if (buf_len as u128) < des.len() as u128 {
            return fail(
                MeaStatus::BufferTooSmall,
                format!("buffer holds {buf_len} positions, need {}", des.len()),
            );
        }
        if !des.is_empty() {
            non_null!(buf);
            let dst = std::slice::from_raw_parts_mut(buf, des.len());
            for (d, v) in dst.iter_mut().zip(des) {
                *d = v as u64;
            }
        }
        MeaStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn mea_classify_alternation(
    p: *const MeaPermutation,
    out: *mut MeaAlternation,
) -> MeaStatus {
    guard(|| {
        non_null!(p, out);
        *out = mea_core::classify_alternation(&(*p).0).into();
        MeaStatus::Ok
    })
}

/// +1 or −1; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mea_sign(p: *const MeaPermutation) -> i32 {
    match p.as_ref() {
        Some(p) => i32::from(mea_core::sign(&p.0).value()),
        None => {
            set_last_error("`p` is null".into());
            0
        }
    }
}

/// −1 when `n ≡ 3 (mod 4)`, else +1.
#[no_mangle]
pub extern "C" fn mea_sign_formula(n: u64) -> i32 {
    if n % 4 == 3 {
        i32::from(Sign::Minus.value())
    } else {
        i32::from(Sign::Plus.value())
    }
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn mea_decompose(n: u64, out: *mut MeaDecomposition) -> MeaStatus {
    guard(|| {
        non_null!(out);
        let n = try_status!(to_usize(n));
        let d = match mea_core::decompose(n) {
            Ok(d) => d,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let mut prefix = [0u64; 4];
        for (slot, &v) in prefix.iter_mut().zip(&d.prefix) {
            *slot = v as u64;
        }
        *out = MeaDecomposition {
            n: d.n as u64,
            odd: u8::from(d.parity == Parity::Odd),
            prefix_len: d.prefix.len() as u64,
            prefix,
            child_n: d.child_n as u64,
            threshold: d.shift_map.threshold as u64,
            low_offset: d.shift_map.low_offset as u64,
            high_offset: d.shift_map.high_offset as u64,
        };
        MeaStatus::Ok
    })
}

/// Runs the range verification and reports pass/fail totals.
///
/// A completed run returns `Ok` even when checks fail; inspect `out.failed`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn mea_verify_range(
    n_min: u64,
    n_max: u64,
    oracle_cap: u64,
    out: *mut MeaVerifySummary,
) -> MeaStatus {
    guard(|| {
        non_null!(out);
        let (n_min, n_max, cap) = (
            try_status!(to_usize(n_min)),
            try_status!(to_usize(n_max)),
            try_status!(to_usize(oracle_cap)),
        );
        match mea_core::verify_range(n_min, n_max, cap) {
            Ok(report) => {
                let failed = report.failures().count() as u64;
                *out = MeaVerifySummary {
                    passed: report.checks.len() as u64 - failed,
                    failed,
                };
                MeaStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Statistics of `p` as a JSON object with fields `n`, `values`,
/// `inversions`, `descents`, `sign`, `alternation`, `cycle_type` and `order`
/// (a decimal string). Free the result with [`mea_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn mea_stats_json(
    p: *const MeaPermutation,
    out: *mut *mut c_char,
) -> MeaStatus {
    guard(|| {
        non_null!(p, out);
        let json = match serde_json::to_string(&StatsReport::of(&(*p).0)) {
            Ok(s) => s,
            Err(e) => return fail(MeaStatus::Internal, e.to_string()),
        };
        match CString::new(json) {
            Ok(c) => {
                *out = c.into_raw();
                MeaStatus::Ok
            }
            Err(e) => fail(MeaStatus::Internal, e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mea_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
