//! C ABI for the linecut solver.
//!
//! Instances and solutions are opaque handles created and freed through this
//! API. Every fallible call returns an [`LcStatus`]; on failure a message is
//! available from [`lc_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linecut::format::parse_instance;
use linecut::oracle::{oracle_solve_capped, DEFAULT_ORACLE_CAP};
use linecut::{
    cut_value_sweep, solve, CompressedInstance, Constraint, CountProfile, Error, Instance,
    Objective, ProblemSpec, Solution,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InstanceEmpty = 3,
    ParseError = 4,
    PrecisionError = 5,
    RangeError = 6,
    InvalidProfile = 7,
    InvalidK = 8,
    UnsupportedProblem = 9,
    OddBisection = 10,
    TooLargeForOracle = 11,
    InvalidArgument = 12,
    Overflow = 13,
    Internal = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcObjective {
    Min = 0,
    Max = 1,
}

/// Opaque compressed instance.
pub struct LcInstance {
    inner: CompressedInstance,
}

/// Opaque solution.
pub struct LcSolution {
    inner: Solution,
    scale_exp: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LcStatus {
    match e {
        Error::InstanceEmpty => LcStatus::InstanceEmpty,
        Error::Parse { .. } => LcStatus::ParseError,
        Error::Precision { .. } | Error::ScaleTooLarge(_) => LcStatus::PrecisionError,
        Error::Range { .. } | Error::CoordOutOfRange(_) => LcStatus::RangeError,
        Error::InvalidProfile(_) => LcStatus::InvalidProfile,
        Error::InvalidK { .. } => LcStatus::InvalidK,
        Error::UnsupportedProblem(_) => LcStatus::UnsupportedProblem,
        Error::OddBisection { .. } => LcStatus::OddBisection,
        Error::TooLargeForOracle { .. } => LcStatus::TooLargeForOracle,
        Error::InvalidGenSpec(_) | Error::InvalidArgument(_) => LcStatus::InvalidArgument,
        Error::Overflow => LcStatus::Overflow,
        Error::InternalInconsistency(_) => LcStatus::Internal,
    }
}

fn fail(e: Error) -> LcStatus {
    set_error(&e.to_string());
    status_of(&e)
}

/// Runs `f`, converting panics into [`LcStatus::Panic`].
fn guarded(f: impl FnOnce() -> LcStatus) -> LcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic inside linecut");
            LcStatus::Panic
        }
    }
}

fn null(what: &str) -> LcStatus {
    set_error(&format!("{what} is null"));
    LcStatus::NullPointer
}

fn spec_of(objective: LcObjective, constrained: bool, k: i64) -> ProblemSpec {
    let objective = match objective {
        LcObjective::Min => Objective::Min,
        LcObjective::Max => Objective::Max,
    };
    let constraint = if constrained { Constraint::Exact(k) } else { Constraint::Unconstrained };
    ProblemSpec { objective, constraint }
}

/// Message for the last failed call on this thread. Valid until the next call
/// into this library from the same thread; never null.
#[no_mangle]
pub extern "C" fn lc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an instance in the text format (`<decimal> [multiplicity]` per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_instance_parse(text: *const c_char, out: *mut *mut LcInstance) -> LcStatus {
    guarded(|| {
        if text.is_null() {
            return null("text");
        }
        if out.is_null() {
            return null("out");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("text is not valid UTF-8");
            return LcStatus::InvalidUtf8;
        };
        match parse_instance(text).and_then(|i| CompressedInstance::compress(&i)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LcInstance { inner }));
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds an instance from scaled integer coordinates (`x * 10^scale_exp`).
///
/// # Safety
/// `coords` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lc_instance_from_scaled(
    coords: *const i64,
    len: usize,
    scale_exp: u32,
    out: *mut *mut LcInstance,
) -> LcStatus {
    guarded(|| {
        if out.is_null() {
            return null("out");
        }
        if coords.is_null() && len > 0 {
            return null("coords");
        }
        let values = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(coords, len).to_vec() };
        match Instance::new(values, scale_exp).and_then(|i| CompressedInstance::compress(&i)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LcInstance { inner }));
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `instance` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_instance_free(instance: *mut LcInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of points, 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_instance_len(instance: *const LcInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.n())
}

/// Number of distinct values, 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_instance_distinct(instance: *const LcInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.distinct())
}

unsafe fn solve_into(
    instance: *const LcInstance,
    objective: LcObjective,
    constrained: bool,
    k: i64,
    out: *mut *mut LcSolution,
    run: impl FnOnce(&CompressedInstance, &ProblemSpec) -> linecut::Result<Solution>,
) -> LcStatus {
    guarded(|| {
        let Some(instance) = instance.as_ref() else { return null("instance") };
        if out.is_null() {
            return null("out");
        }
        let spec = spec_of(objective, constrained, k);
        match run(&instance.inner, &spec) {
            Ok(inner) => {
                let scale_exp = instance.inner.scale_exp();
                *out = Box::into_raw(Box::new(LcSolution { inner, scale_exp }));
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Solves exactly with the dynamic program. With `constrained` false, `k` is
/// ignored and only `LC_OBJECTIVE_MAX` is accepted.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_solve(
    instance: *const LcInstance,
    objective: LcObjective,
    constrained: bool,
    k: i64,
    out: *mut *mut LcSolution,
) -> LcStatus {
    solve_into(instance, objective, constrained, k, out, solve)
}

/// Solves by exhaustive enumeration; fails with `LC_STATUS_TOO_LARGE_FOR_ORACLE`
/// above the default profile cap.
///
/// # Safety
/// As for [`lc_solve`].
#[no_mangle]
pub unsafe extern "C" fn lc_oracle_solve(
    instance: *const LcInstance,
    objective: LcObjective,
    constrained: bool,
    k: i64,
    out: *mut *mut LcSolution,
) -> LcStatus {
    solve_into(instance, objective, constrained, k, out, |ci, spec| {
        oracle_solve_capped(ci, spec, DEFAULT_ORACLE_CAP)
    })
}

/// # Safety
/// `solution` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_free(solution: *mut LcSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Optimal value in units of `10^-scale_exp`, split into the high and low 64
/// bits of a signed 128-bit integer.
///
/// # Safety
/// `solution` must be a live handle; `hi` and `lo` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_value_scaled(
    solution: *const LcSolution,
    hi: *mut i64,
    lo: *mut u64,
) -> LcStatus {
    guarded(|| {
        let Some(s) = solution.as_ref() else { return null("solution") };
        if hi.is_null() || lo.is_null() {
            return null("hi/lo");
        }
        let v = s.inner.value.get();
        *hi = (v >> 64) as i64;
        *lo = v as u64;
        LcStatus::Ok
    })
}

/// Optimal value as an exact decimal string. Free with [`lc_string_free`].
/// Returns null on a null handle.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_value_string(solution: *const LcSolution) -> *mut c_char {
    match solution.as_ref() {
        Some(s) => CString::new(s.inner.value.to_decimal(s.scale_exp))
            .map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Size of the first set.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_first_size(solution: *const LcSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.inner.k_actual)
}

/// Length of the count profile (the number of distinct values).
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_profile_len(solution: *const LcSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.inner.profile.counts().len())
}

/// Copies the first-set count of each distinct value (ascending) into `buf`.
/// `len` must equal [`lc_solution_profile_len`].
///
/// # Safety
/// `solution` must be a live handle and `buf` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn lc_solution_profile(
    solution: *const LcSolution,
    buf: *mut usize,
    len: usize,
) -> LcStatus {
    guarded(|| {
        let Some(s) = solution.as_ref() else { return null("solution") };
        let counts = s.inner.profile.counts();
        if len != counts.len() {
            set_error(&format!("buffer holds {len} entries, profile has {}", counts.len()));
            return LcStatus::InvalidArgument;
        }
        if buf.is_null() && len > 0 {
            return null("buf");
        }
        if len > 0 {
            std::slice::from_raw_parts_mut(buf, len).copy_from_slice(counts);
        }
        LcStatus::Ok
    })
}

/// Cut value of a count profile, scaled like [`lc_solution_value_scaled`].
///
/// # Safety
/// `instance` must be a live handle, `counts` must hold `len` values, and
/// `hi`/`lo` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lc_cut_value(
    instance: *const LcInstance,
    counts: *const usize,
    len: usize,
    hi: *mut i64,
    lo: *mut u64,
) -> LcStatus {
    guarded(|| {
        let Some(instance) = instance.as_ref() else { return null("instance") };
        if hi.is_null() || lo.is_null() {
            return null("hi/lo");
        }
        if counts.is_null() && len > 0 {
            return null("counts");
        }
        let a = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(counts, len).to_vec() };
        match cut_value_sweep(&instance.inner, &CountProfile::new(a)) {
            Ok(v) => {
                *hi = (v.get() >> 64) as i64;
                *lo = v.get() as u64;
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
