//! C interface. Objects cross the boundary as opaque handles; every call
//! returns a status code and leaves a message for
//! `cobarlab_last_error_message` on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cobarlab::cli::{
    bundled, certificate_exit_code, cmd_cobar, cmd_paper_report, cmd_survives, cmd_validate,
    cmd_weq, parse_workspace, render_certificate, render_weq, ReportOptions, Workspace,
};
use cobarlab::Error;
use serde::Serialize;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobarStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    InvalidField = 10,
    Parse = 11,
    UnknownName = 12,
    Degree = 13,
    DimensionMismatch = 14,
    Equivariance = 15,
    MaurerCartan = 16,
    NotClosed = 17,
    DSquared = 18,
    Coderivation = 19,
    Regime = 20,
    WindowNotCertified = 21,
    NotChainMap = 22,
    Arity = 23,
    Mismatch = 24,
    Characteristic = 25,
    Unsupported = 26,
    Validation = 27,
}

impl From<&Error> for CobarStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidField(_) => CobarStatus::InvalidField,
            Error::Parse(_) => CobarStatus::Parse,
            Error::UnknownName(_) => CobarStatus::UnknownName,
            Error::Degree(_) => CobarStatus::Degree,
            Error::DimensionMismatch(_) => CobarStatus::DimensionMismatch,
            Error::Equivariance(_) => CobarStatus::Equivariance,
            Error::MaurerCartan(_) => CobarStatus::MaurerCartan,
            Error::NotClosed(_) => CobarStatus::NotClosed,
            Error::DSquared(_) => CobarStatus::DSquared,
            Error::Coderivation(_) => CobarStatus::Coderivation,
            Error::Regime(_) => CobarStatus::Regime,
            Error::WindowNotCertified(_) => CobarStatus::WindowNotCertified,
            Error::NotChainMap(_) => CobarStatus::NotChainMap,
            Error::Arity(_) => CobarStatus::Arity,
            Error::Mismatch(_) => CobarStatus::Mismatch,
            Error::Characteristic(_) => CobarStatus::Characteristic,
            Error::Unsupported(_) => CobarStatus::Unsupported,
            Error::Validation(_) => CobarStatus::Validation,
        }
    }
}

/// A loaded, validated workspace.
pub struct CobarWorkspace {
    inner: Workspace,
}

/// A finished report: its verdict as an exit code, a text rendering and a
/// JSON twin.
pub struct CobarReport {
    exit_code: i32,
    text: CString,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CobarStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Failure(CobarStatus::from(&e))
    }
}

/// Runs `f`, catching panics, and writes its value through `out`.
fn guard<T>(out: *mut *mut T, f: impl FnOnce() -> Result<T, Failure>) -> CobarStatus {
    if out.is_null() {
        set_error("the output pointer is null".into());
        return CobarStatus::NullArgument;
    }
    // SAFETY: `out` is non-null and the caller promises it is writable.
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(value)) => {
            // SAFETY: as above.
            unsafe { *out = Box::into_raw(Box::new(value)) };
            CobarStatus::Ok
        }
        Ok(Err(Failure(status))) => status,
        Err(_) => {
            set_error("internal panic".into());
            CobarStatus::Panic
        }
    }
}

/// Borrows a C string as UTF-8.
///
/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        set_error(format!("{what} is null"));
        return Err(Failure(CobarStatus::NullArgument));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        Failure(CobarStatus::InvalidUtf8)
    })
}

/// # Safety
/// `levels` must point to `len` readable values, or be null with `len` 0.
unsafe fn schedule<'a>(levels: *const u32, len: usize) -> Result<&'a [u32], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if levels.is_null() {
        set_error("the schedule is null".into());
        return Err(Failure(CobarStatus::NullArgument));
    }
    Ok(std::slice::from_raw_parts(levels, len))
}

fn report<T: Serialize>(
    exit_code: i32,
    value: &T,
    rendered: String,
) -> Result<CobarReport, Failure> {
    let json = serde_json::to_string(value).map_err(|e| Error::Parse(e.to_string()))?;
    let c = |s: String| CString::new(s.replace('\0', " ")).expect("nul bytes removed");
    Ok(CobarReport {
        exit_code,
        text: c(rendered),
        json: c(json),
    })
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cobarlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Loads a workspace from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_workspace_from_json(
    json: *const c_char,
    out: *mut *mut CobarWorkspace,
) -> CobarStatus {
    guard(out, || {
        let file = parse_workspace(text(json, "json")?)?;
        Ok(CobarWorkspace {
            inner: Workspace::load(file)?,
        })
    })
}

/// Loads one of the bundled workspaces by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_workspace_from_fixture(
    name: *const c_char,
    out: *mut *mut CobarWorkspace,
) -> CobarStatus {
    guard(out, || {
        Ok(CobarWorkspace {
            inner: Workspace::load(bundled(text(name, "name")?)?)?,
        })
    })
}

/// # Safety
/// `ws` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_workspace_free(ws: *mut CobarWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Runs every validator on a JSON workspace. Invalid objects are part of the
/// report, not a failure.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_validate(
    json: *const c_char,
    out: *mut *mut CobarReport,
) -> CobarStatus {
    guard(out, || {
        let r = cmd_validate(parse_workspace(text(json, "json")?)?)?;
        report(r.exit_code(), &r, r.render())
    })
}

/// Builds `Ω_α X` up to `max_weight` on the default window.
///
/// # Safety
/// `ws` must be a live handle, the names NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_cobar(
    ws: *const CobarWorkspace,
    coalgebra: *const c_char,
    twisting: *const c_char,
    max_weight: u32,
    out: *mut *mut CobarReport,
) -> CobarStatus {
    guard(out, || {
        let ws = workspace(ws)?;
        let r = cmd_cobar(
            ws,
            text(coalgebra, "coalgebra")?,
            text(twisting, "twisting")?,
            max_weight,
            None,
        )?;
        report(0, &r, r.render())
    })
}

/// Level-by-level weak-equivalence verdicts. Exit code 0, 1 or 2 for stable
/// yes, stable no, unstable.
///
/// # Safety
/// As for `cobarlab_cobar`; `levels` points to `len` values.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_weq(
    ws: *const CobarWorkspace,
    morphism: *const c_char,
    twisting: *const c_char,
    levels: *const u32,
    len: usize,
    stability: usize,
    out: *mut *mut CobarReport,
) -> CobarStatus {
    guard(out, || {
        let ws = workspace(ws)?;
        let r = cmd_weq(
            ws,
            text(morphism, "morphism")?,
            text(twisting, "twisting")?,
            None,
            schedule(levels, len)?,
            stability,
        )?;
        report(r.summary.exit_code(), &r, render_weq(&r))
    })
}

/// Span-membership certificate for a class. Exit code 0 when it stably
/// survives, 1 when stably a boundary, 2 otherwise.
///
/// # Safety
/// As for `cobarlab_weq`.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_survives(
    ws: *const CobarWorkspace,
    coalgebra: *const c_char,
    twisting: *const c_char,
    class: *const c_char,
    levels: *const u32,
    len: usize,
    stability: usize,
    out: *mut *mut CobarReport,
) -> CobarStatus {
    guard(out, || {
        let ws = workspace(ws)?;
        let c = cmd_survives(
            ws,
            text(coalgebra, "coalgebra")?,
            text(twisting, "twisting")?,
            text(class, "class")?,
            None,
            schedule(levels, len)?,
            stability,
        )?;
        report(certificate_exit_code(&c), &c, render_certificate(&c))
    })
}

/// The full reproduction report; `field` may be null for ℚ.
///
/// # Safety
/// `field` must be null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_paper_report(
    field: *const c_char,
    out: *mut *mut CobarReport,
) -> CobarStatus {
    guard(out, || {
        let mut opts = ReportOptions::default();
        if !field.is_null() {
            opts.field = text(field, "field")?.parse()?;
        }
        let r = cmd_paper_report(&opts)?;
        report(r.exit_code(), &r, r.render())
    })
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_report_exit_code(r: *const CobarReport) -> i32 {
    r.as_ref().map_or(-1, |r| r.exit_code)
}

/// Borrowed; valid until the report is freed.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_report_text(r: *const CobarReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.text.as_ptr())
}

/// Borrowed; valid until the report is freed.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_report_json(r: *const CobarReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `r` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cobarlab_report_free(r: *mut CobarReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

unsafe fn workspace<'a>(ws: *const CobarWorkspace) -> Result<&'a Workspace, Failure> {
    ws.as_ref().map(|w| &w.inner).ok_or_else(|| {
        set_error("the workspace handle is null".into());
        Failure(CobarStatus::NullArgument)
    })
}
