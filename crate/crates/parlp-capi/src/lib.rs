//! C ABI for the parlp toolkit.
//!
//! The surface is deliberately narrow: problems and families are opaque
//! handles created from the same JSON documents the CLI reads, every result
//! comes back as a JSON string the caller frees with [`parlp_string_free`],
//! and each call returns a status code. The last error message is kept per
//! thread and retrievable with [`parlp_last_error_message`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use parlp::sensitivity;
use parlp::{classify, probe, EnumCap, Error, LpProblem, PerturbationRay, ProblemFamily};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParlpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Structural problem in an input document (missing field, ragged
    /// matrix, dimension mismatch).
    SchemaError = 3,
    /// Malformed scalar (bad rational string, zero denominator, bad N).
    ValueError = 4,
    CapExceeded = 5,
    /// The operation needs an optimal problem and did not get one.
    NotOptimal = 6,
    /// Any other domain error (singular basis, zero delta, rectangular
    /// basis, infeasible member, ...).
    DomainError = 7,
    /// A defect surfaced as a panic and was caught at the boundary.
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let cstring = CString::new(message).unwrap_or_else(|_| {
        CString::new("error message contained an interior nul byte").expect("static message")
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> ParlpStatus {
    match err {
        Error::Schema(_) | Error::DimensionMismatch(_) => ParlpStatus::SchemaError,
        Error::Value(_) => ParlpStatus::ValueError,
        Error::CapExceeded(_) => ParlpStatus::CapExceeded,
        Error::NotOptimal(_) | Error::NotOptimalBasic => ParlpStatus::NotOptimal,
        _ => ParlpStatus::DomainError,
    }
}

/// Opaque handle to a parsed problem.
pub struct ParlpProblem {
    inner: LpProblem,
}

/// Opaque handle to a parsed problem family.
pub struct ParlpFamily {
    inner: ProblemFamily,
}

/// # Safety
/// `ptr` must be non-null and point to a nul-terminated string valid for the
/// duration of the call.
unsafe fn input_str<'a>(ptr: *const c_char) -> Result<&'a str, ParlpStatus> {
    if ptr.is_null() {
        set_last_error("null input pointer".into());
        return Err(ParlpStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("input is not valid UTF-8".into());
        ParlpStatus::InvalidUtf8
    })
}

fn write_out<T>(out: *mut *mut T, value: *mut T) -> ParlpStatus {
    if out.is_null() {
        set_last_error("null output pointer".into());
        return ParlpStatus::NullPointer;
    }
    unsafe { *out = value };
    ParlpStatus::Ok
}

/// Runs `body`, converting errors and panics to status codes and stashing
/// their messages.
fn guarded<F: FnOnce() -> Result<ParlpStatus, Error>>(body: F) -> ParlpStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => {
            let status = status_of(&err);
            set_last_error(err.to_string());
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal defect: {message}"));
            ParlpStatus::Internal
        }
    }
}

fn json_out<T: serde::Serialize>(value: &T, out_json: *mut *mut c_char) -> ParlpStatus {
    let json = serde_json::to_string(value).expect("report serialization cannot fail");
    let cstring = CString::new(json).expect("JSON output has no interior nul");
    write_out(out_json, cstring.into_raw())
}

/// Parses a problem JSON document into an opaque handle.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be a valid
/// location to write the handle to. The handle must be released with
/// [`parlp_problem_free`].
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_parse(
    json: *const c_char,
    out: *mut *mut ParlpProblem,
) -> ParlpStatus {
    guarded(|| {
        let text = match input_str(json) {
            Ok(t) => t,
            Err(status) => return Ok(status),
        };
        let problem = parlp::parse_problem(text)?;
        Ok(write_out(
            out,
            Box::into_raw(Box::new(ParlpProblem { inner: problem })),
        ))
    })
}

/// Releases a handle returned by [`parlp_problem_parse`]. Null is a no-op.
///
/// # Safety
/// `problem` must be null or a pointer previously returned by
/// [`parlp_problem_parse`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_free(problem: *mut ParlpProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Canonical JSON serialization of the problem (round-trips bit-identically
/// through [`parlp_problem_parse`]).
///
/// # Safety
/// `problem` must be a live handle; `out_json` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_to_json(
    problem: *const ParlpProblem,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| {
        let Some(handle) = problem.as_ref() else {
            set_last_error("null problem handle".into());
            return Ok(ParlpStatus::NullPointer);
        };
        Ok(json_out(&handle.inner, out_json))
    })
}

/// Solves the problem; `out_json` receives the outcome document
/// (status, value, optimal basic points with certified duals).
///
/// # Safety
/// `problem` must be a live handle; `out_json` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_solve(
    problem: *const ParlpProblem,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| {
        let Some(handle) = problem.as_ref() else {
            set_last_error("null problem handle".into());
            return Ok(ParlpStatus::NullPointer);
        };
        let outcome = parlp::solve(&handle.inner, &EnumCap::default())?;
        Ok(json_out(&outcome, out_json))
    })
}

/// Classifies the problem (feasible, bounded, regular, strongly regular,
/// singleton-solvable, with witnesses).
///
/// # Safety
/// `problem` must be a live handle; `out_json` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_classify(
    problem: *const ParlpProblem,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| {
        let Some(handle) = problem.as_ref() else {
            set_last_error("null problem handle".into());
            return Ok(ParlpStatus::NullPointer);
        };
        let classification = classify::classify(&handle.inner, &EnumCap::default())?;
        Ok(json_out(&classification, out_json))
    })
}

unsafe fn interval_call(
    problem: *const ParlpProblem,
    delta_json: *const c_char,
    out_json: *mut *mut c_char,
    objective: bool,
) -> Result<ParlpStatus, Error> {
    let Some(handle) = problem.as_ref() else {
        set_last_error("null problem handle".into());
        return Ok(ParlpStatus::NullPointer);
    };
    let text = match input_str(delta_json) {
        Ok(t) => t,
        Err(status) => return Ok(status),
    };
    let raw: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let delta = raw
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<parlp::Rational>, Error>>()
        .map(parlp::RationalVector::new)?;
    let cap = EnumCap::default();
    let outcome = parlp::solve(&handle.inner, &cap)?;
    let point = outcome
        .representative()
        .ok_or_else(|| Error::NotOptimal(format!("problem is {}", outcome.status.as_str())))?;
    let (ray, interval) = if objective {
        let interval = sensitivity::objective_interval(&handle.inner, point, &delta)?;
        (PerturbationRay::Objective(delta), interval)
    } else {
        let interval = sensitivity::rhs_interval(&handle.inner, point, &delta)?;
        (PerturbationRay::Rhs(delta), interval)
    };
    let grid = sensitivity::default_theta_grid(&interval);
    let report = sensitivity::verify_interval(&handle.inner, &ray, &interval, &grid, &cap)?;
    Ok(json_out(&report, out_json))
}

/// Rhs ranging at the representative optimal vertex: interval, slope, and a
/// verification table over the default theta grid. `delta_json` is a JSON
/// array of rationals.
///
/// # Safety
/// `problem` must be a live handle; `delta_json` a valid nul-terminated
/// string; `out_json` a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_rhs_interval(
    problem: *const ParlpProblem,
    delta_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| interval_call(problem, delta_json, out_json, false))
}

/// Objective ranging; see [`parlp_problem_rhs_interval`].
///
/// # Safety
/// Same contract as [`parlp_problem_rhs_interval`].
#[no_mangle]
pub unsafe extern "C" fn parlp_problem_objective_interval(
    problem: *const ParlpProblem,
    delta_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| interval_call(problem, delta_json, out_json, true))
}

/// Parses a family JSON document into an opaque handle.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` a valid write target.
/// The handle must be released with [`parlp_family_free`].
#[no_mangle]
pub unsafe extern "C" fn parlp_family_parse(
    json: *const c_char,
    out: *mut *mut ParlpFamily,
) -> ParlpStatus {
    guarded(|| {
        let text = match input_str(json) {
            Ok(t) => t,
            Err(status) => return Ok(status),
        };
        let family = parlp::parse_family(text)?;
        Ok(write_out(
            out,
            Box::into_raw(Box::new(ParlpFamily { inner: family })),
        ))
    })
}

/// Releases a handle returned by [`parlp_family_parse`]. Null is a no-op.
///
/// # Safety
/// `family` must be null or a pointer previously returned by
/// [`parlp_family_parse`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn parlp_family_free(family: *mut ParlpFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Runs the full probe suite over the family members `ns[0..ns_len]`.
///
/// # Safety
/// `family` must be a live handle; `ns` must point to `ns_len` readable
/// values; `out_json` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_family_probe(
    family: *const ParlpFamily,
    ns: *const u64,
    ns_len: usize,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| {
        let Some(handle) = family.as_ref() else {
            set_last_error("null family handle".into());
            return Ok(ParlpStatus::NullPointer);
        };
        if ns.is_null() {
            set_last_error("null N list".into());
            return Ok(ParlpStatus::NullPointer);
        }
        let ns = std::slice::from_raw_parts(ns, ns_len);
        let report = probe::probe_family(&handle.inner, ns, &EnumCap::default())?;
        Ok(json_out(&report, out_json))
    })
}

/// Reproduces Example 1 over `ns[0..ns_len]` (pass `ns_len = 0` with any
/// pointer for the default 1..=100) and returns its report.
///
/// # Safety
/// `ns` must point to `ns_len` readable values when `ns_len > 0`;
/// `out_json` must be a valid write target.
#[no_mangle]
pub unsafe extern "C" fn parlp_example1(
    ns: *const u64,
    ns_len: usize,
    out_json: *mut *mut c_char,
) -> ParlpStatus {
    guarded(|| {
        let ns: Vec<u64> = if ns_len == 0 {
            (1..=100).collect()
        } else {
            if ns.is_null() {
                set_last_error("null N list".into());
                return Ok(ParlpStatus::NullPointer);
            }
            std::slice::from_raw_parts(ns, ns_len).to_vec()
        };
        let report = probe::run_example1(&ns, &EnumCap::default())?;
        Ok(json_out(&report, out_json))
    })
}

/// Frees a string returned through any `out_json` parameter. Null is a
/// no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn parlp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the most recent error on this thread, or null when the
/// last call succeeded. The caller owns the string and frees it with
/// [`parlp_string_free`].
#[no_mangle]
pub extern "C" fn parlp_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Static name of a status code ("ok", "schema_error", ...).
#[no_mangle]
pub extern "C" fn parlp_status_name(status: ParlpStatus) -> *const c_char {
    let name: &'static CStr = match status {
        ParlpStatus::Ok => c"ok",
        ParlpStatus::NullPointer => c"null_pointer",
        ParlpStatus::InvalidUtf8 => c"invalid_utf8",
        ParlpStatus::SchemaError => c"schema_error",
        ParlpStatus::ValueError => c"value_error",
        ParlpStatus::CapExceeded => c"cap_exceeded",
        ParlpStatus::NotOptimal => c"not_optimal",
        ParlpStatus::DomainError => c"domain_error",
        ParlpStatus::Internal => c"internal",
    };
    name.as_ptr()
}
