//! C ABI for `plie`.
//!
//! Queries and results are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`PlieStatus`]; on failure `plie_last_error` describes the problem for the
//! calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plie::cli::{dims_report, DimsReport};
use plie::{DegreeWindow, Error, Guard, PLieQuery, Variant};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    WindowRequired = 4,
    GuardExceeded = 5,
    OutOfRange = 6,
    Internal = 7,
}

/// Variant code of the strict theory.
pub const PLIE_VARIANT_DELTA: u32 = 0;
/// Variant code of the spectral theory.
pub const PLIE_VARIANT_EINFTY: u32 = 1;

/// Opaque query handle.
pub struct PlieQuery {
    inner: PLieQuery,
    guard: Guard,
}

/// Opaque result handle.
pub struct PlieResult {
    report: DimsReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PlieStatus {
    match e {
        Error::NotPrime(_) => PlieStatus::NotPrime,
        Error::WindowRequired(_) => PlieStatus::WindowRequired,
        Error::Guard { .. } => PlieStatus::GuardExceeded,
        Error::InvalidArgument(_) => PlieStatus::InvalidArgument,
        _ => PlieStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), (PlieStatus, String)>) -> PlieStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PlieStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            PlieStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (PlieStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PlieStatus, String) {
    (PlieStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn plie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn plie_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build a query. `gens` points to `n_gens` generator degrees.
///
/// # Safety
/// `gens` must be valid for `n_gens` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn plie_query_new(
    p: u64,
    variant: u32,
    gens: *const i64,
    n_gens: usize,
    max_total_weight: u64,
    window_lo: i64,
    window_hi: i64,
    basis: bool,
    out: *mut *mut PlieQuery,
) -> PlieStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if gens.is_null() && n_gens > 0 {
            return Err(null("gens"));
        }
        let variant = match variant {
            PLIE_VARIANT_DELTA => Variant::Delta,
            PLIE_VARIANT_EINFTY => Variant::Einfty,
            v => return Err((PlieStatus::InvalidArgument, format!("unknown variant code {v}"))),
        };
        let gens = if n_gens == 0 { Vec::new() } else { std::slice::from_raw_parts(gens, n_gens).to_vec() };
        let window = DegreeWindow::new(window_lo, window_hi).map_err(lib_err)?;
        let inner = PLieQuery { p, gens, variant, max_total_weight, window, basis };
        let guard = Guard::from_env();
        inner.validate(&guard).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PlieQuery { inner, guard }));
        Ok(())
    })
}

/// Build a query from JSON with the fields
/// `p, gens, variant, max_total_weight, window: {lo, hi}, basis`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn plie_query_from_json(json: *const c_char, out: *mut *mut PlieQuery) -> PlieStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (PlieStatus::InvalidArgument, format!("query is not UTF-8: {e}")))?;
        let inner: PLieQuery = serde_json::from_str(text).map_err(|e| (PlieStatus::InvalidArgument, format!("bad query JSON: {e}")))?;
        let guard = Guard::from_env();
        inner.validate(&guard).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PlieQuery { inner, guard }));
        Ok(())
    })
}

/// Set the ceiling on partition-complex sizes for this query.
///
/// # Safety
/// `q` must come from `plie_query_new` or `plie_query_from_json`.
#[no_mangle]
pub unsafe extern "C" fn plie_query_set_guard_n(q: *mut PlieQuery, n: usize) -> PlieStatus {
    guarded(|| {
        let q = q.as_mut().ok_or_else(|| null("query"))?;
        q.guard = Guard { max_weight: q.guard.max_weight, ..Guard::with_max_n(n) };
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plie_query_free(q: *mut PlieQuery) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Run the query.
///
/// # Safety
/// `q` must be a live query handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn plie_compute(q: *const PlieQuery, out: *mut *mut PlieResult) -> PlieStatus {
    guarded(|| {
        let q = q.as_ref().ok_or_else(|| null("query"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = dims_report(&q.inner, &q.guard).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PlieResult { report }));
        Ok(())
    })
}

/// Number of nonzero (weight, degree) entries.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn plie_result_len(r: *const PlieResult) -> usize {
    r.as_ref().map_or(0, |r| r.report.entries.len())
}

/// Degree, dimension and total weight of entry `index`, in output order
/// (total weight, then degree).
///
/// # Safety
/// `r` must be a live result handle; the out pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn plie_result_entry(r: *const PlieResult, index: usize, degree: *mut i64, dim: *mut u64, total_weight: *mut u64) -> PlieStatus {
    guarded(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        let e = r.report.entries.get(index).ok_or_else(|| (PlieStatus::OutOfRange, format!("entry {index} out of range")))?;
        if !degree.is_null() {
            *degree = e.degree;
        }
        if !dim.is_null() {
            *dim = e.dim;
        }
        if !total_weight.is_null() {
            *total_weight = e.weight.iter().sum();
        }
        Ok(())
    })
}

/// Copy the weight vector of entry `index` into `buf` (capacity `cap`);
/// `*len` receives its full length, so a short buffer can be retried.
///
/// # Safety
/// `buf` must be valid for `cap` writes and `len` for one write.
#[no_mangle]
pub unsafe extern "C" fn plie_result_weight(r: *const PlieResult, index: usize, buf: *mut u64, cap: usize, len: *mut usize) -> PlieStatus {
    guarded(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        if len.is_null() {
            return Err(null("len"));
        }
        let e = r.report.entries.get(index).ok_or_else(|| (PlieStatus::OutOfRange, format!("entry {index} out of range")))?;
        *len = e.weight.len();
        if cap < e.weight.len() {
            return Err((PlieStatus::OutOfRange, format!("buffer holds {cap}, need {}", e.weight.len())));
        }
        if !e.weight.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(e.weight.as_ptr(), buf, e.weight.len());
        }
        Ok(())
    })
}

/// The whole result as JSON (the CLI's schema). Release with `plie_string_free`.
///
/// # Safety
/// `r` must be a live result handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn plie_result_to_json(r: *const PlieResult, out: *mut *mut c_char) -> PlieStatus {
    guarded(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(&r.report).map_err(|e| (PlieStatus::Internal, e.to_string()))?;
        *out = CString::new(s).map_err(|e| (PlieStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plie_result_free(r: *mut PlieResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
