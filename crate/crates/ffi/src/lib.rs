//! C ABI over the hypergram library.
//!
//! Objects are opaque handles created by `*_from_json` or `hg_assign` and
//! released with the matching `*_free`. Every fallible call returns an
//! [`HgStatus`]; on failure `hg_last_error_message` describes the most recent
//! error on the calling thread. Strings returned by the library are released
//! with `hg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypergram::assign::{pauli_assignment_from_anticommutations, sign_function, verify_assignment, AssignError};
use hypergram::degree::{degree_exact, degree_heuristic, DegreeError, HeuristicParams, Method};
use hypergram::io::{self, IoError};
use hypergram::{Hypergram, PauliAssignment};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidHypergram = 4,
    NotAssignable = 5,
    ThresholdExceeded = 6,
    Mismatch = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgMethod {
    /// Exact when rank(C(H)) is within the default threshold, heuristic otherwise.
    Auto = 0,
    Exact = 1,
    Heuristic = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HgDegree {
    pub value: usize,
    pub exact: bool,
    /// 0 exhaustive, 1 brute force, 2 heuristic.
    pub method: u32,
}

/// Opaque validated hypergram.
pub struct HgHypergram(Hypergram);

/// Opaque Pauli assignment.
pub struct HgAssignment(PauliAssignment);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: HgStatus, msg: impl Into<String>) -> HgStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `HgStatus::Panic`.
fn guard(f: impl FnOnce() -> HgStatus) -> HgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HgStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HgStatus> {
    if s.is_null() {
        return Err(fail(HgStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HgStatus::InvalidUtf8, "string is not UTF-8"))
}

fn io_status(e: IoError) -> HgStatus {
    let status = if e.is_parse_error() {
        HgStatus::Parse
    } else {
        HgStatus::InvalidHypergram
    };
    fail(status, e.to_string())
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(v) => v,
            None => return fail(HgStatus::NullPointer, concat!("null ", stringify!($p))),
        }
    };
}

macro_rules! out_ptr {
    ($p:expr) => {
        match $p.as_mut() {
            Some(v) => v,
            None => return fail(HgStatus::NullPointer, concat!("null ", stringify!($p))),
        }
    };
}

/// Why the previous call on this thread failed, or NULL if it succeeded.
/// Valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn hg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a hypergram file body.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergram_from_json(json: *const c_char, out: *mut *mut HgHypergram) -> HgStatus {
    guard(|| {
        let out = out_ptr!(out);
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse_hypergram(text) {
            Ok(hg) => {
                *out = Box::into_raw(Box::new(HgHypergram(hg)));
                HgStatus::Ok
            }
            Err(e) => io_status(e),
        }
    })
}

/// # Safety
/// `hg` must come from `hg_hypergram_from_json` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergram_free(hg: *mut HgHypergram) {
    if !hg.is_null() {
        drop(Box::from_raw(hg));
    }
}

/// # Safety
/// `hg` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hg_hypergram_vertex_count(hg: *const HgHypergram) -> usize {
    hg.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// # Safety
/// `hg` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hg_hypergram_hyperedge_count(hg: *const HgHypergram) -> usize {
    hg.as_ref().map_or(0, |h| h.0.hyperedge_count())
}

/// Writes whether `H × G = 0`.
///
/// # Safety
/// `hg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergram_is_assignable(hg: *const HgHypergram, out: *mut bool) -> HgStatus {
    guard(|| {
        let hg = deref!(hg);
        *out_ptr!(out) = hg.0.is_assignable();
        HgStatus::Ok
    })
}

/// Builds a Pauli assignment from the anticommutation graph.
///
/// # Safety
/// `hg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_assign(hg: *const HgHypergram, out: *mut *mut HgAssignment) -> HgStatus {
    guard(|| {
        let hg = deref!(hg);
        let out = out_ptr!(out);
        *out = ptr::null_mut();
        match pauli_assignment_from_anticommutations(&hg.0) {
            Ok(alpha) => {
                *out = Box::into_raw(Box::new(HgAssignment(alpha)));
                HgStatus::Ok
            }
            Err(e @ AssignError::NotAssignable { .. }) => fail(HgStatus::NotAssignable, e.to_string()),
            Err(e) => fail(HgStatus::Panic, e.to_string()),
        }
    })
}

/// Parses an assignment file body.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_assignment_from_json(json: *const c_char, out: *mut *mut HgAssignment) -> HgStatus {
    guard(|| {
        let out = out_ptr!(out);
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse_assignment(text) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(HgAssignment(a)));
                HgStatus::Ok
            }
            Err(e) => io_status(e),
        }
    })
}

/// # Safety
/// `alpha` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hg_assignment_qubits(alpha: *const HgAssignment) -> usize {
    alpha.as_ref().map_or(0, |a| a.0.qubits())
}

/// Serializes an assignment; release the string with `hg_string_free`.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_assignment_to_json(alpha: *const HgAssignment, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let alpha = deref!(alpha);
        let out = out_ptr!(out);
        let text = io::assignment_to_json(&alpha.0).to_string();
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        HgStatus::Ok
    })
}

/// # Safety
/// `alpha` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_assignment_free(alpha: *mut HgAssignment) {
    if !alpha.is_null() {
        drop(Box::from_raw(alpha));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Contextuality degree of the sign function of `alpha` on `hg`.
///
/// `seed` only matters for the heuristic, which uses default parameters otherwise.
///
/// # Safety
/// `hg` and `alpha` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_degree(
    hg: *const HgHypergram,
    alpha: *const HgAssignment,
    method: HgMethod,
    seed: u64,
    out: *mut HgDegree,
) -> HgStatus {
    guard(|| {
        let hg = &deref!(hg).0;
        let alpha = &deref!(alpha).0;
        let out = out_ptr!(out);
        if alpha.len() != hg.vertex_count() || !verify_assignment(alpha, hg) {
            return fail(HgStatus::Mismatch, "not a Pauli assignment of this hypergram");
        }
        let signs = match sign_function(alpha, hg) {
            Ok(s) => s,
            Err(e) => return fail(HgStatus::Mismatch, e.to_string()),
        };
        let params = HeuristicParams {
            seed,
            ..HeuristicParams::default()
        };
        let result = match method {
            HgMethod::Exact => degree_exact(hg, &signs),
            HgMethod::Heuristic => degree_heuristic(hg, &signs, &params),
            HgMethod::Auto => match degree_exact(hg, &signs) {
                Err(DegreeError::ThresholdExceeded { .. }) => degree_heuristic(hg, &signs, &params),
                other => other,
            },
        };
        match result {
            Ok(r) => {
                *out = HgDegree {
                    value: r.value,
                    exact: r.exact,
                    method: match r.method {
                        Method::Exhaustive => 0,
                        Method::BruteForce => 1,
                        Method::Heuristic => 2,
                    },
                };
                HgStatus::Ok
            }
            Err(e @ DegreeError::ThresholdExceeded { .. }) => fail(HgStatus::ThresholdExceeded, e.to_string()),
            Err(e) => fail(HgStatus::Mismatch, e.to_string()),
        }
    })
}
