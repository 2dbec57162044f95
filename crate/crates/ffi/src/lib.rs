//! C ABI over `tjm-core`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Fallible calls return a
//! [`TjmError`] code; the message for the most recent failure on the calling
//! thread is available from [`tjm_last_error_message`]. Strings returned by
//! the library are NUL-terminated and must be released with
//! [`tjm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tjm_core::jacquet::{self, Status, TJMVerdict};
use tjm_core::{lfun, parse, zelevinsky, Error, ReprExpr};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjmError {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    Unsupported = 5,
    Consistency = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjmStatus {
    Zero = 0,
    NonZero = 1,
    Unknown = 2,
}

/// A parsed representation expression.
pub struct TjmExpr(ReprExpr);

/// The filtration verdict for `rho1 x rho2`.
pub struct TjmVerdict(TJMVerdict);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(e: &Error) -> TjmError {
    match e {
        Error::Parse { .. } => TjmError::Parse,
        Error::InvalidSegment(_)
        | Error::MixedLabels
        | Error::EmptyMultisegment
        | Error::NotLinked
        | Error::OutOfRange(_)
        | Error::RankMismatch { .. } => TjmError::OutOfRange,
        Error::Unsupported(_) => TjmError::Unsupported,
        Error::Consistency(_) => TjmError::Consistency,
    }
}

/// Runs `f`, turning `Err` and panics into an error code plus message.
fn guard<F>(f: F) -> TjmError
where
    F: FnOnce() -> Result<(), (TjmError, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TjmError::Ok,
        Ok(Err((code, msg))) => {
            set_last_error(msg);
            code
        }
        Err(_) => {
            set_last_error("panic inside tjm".into());
            TjmError::Panic
        }
    }
}

fn core_err(e: Error) -> (TjmError, String) {
    (code_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (TjmError, String)> {
    if p.is_null() {
        return Err((TjmError::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (TjmError::InvalidUtf8, e.to_string()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn null_out<T>(p: *mut T) -> Result<(), (TjmError, String)> {
    if p.is_null() {
        Err((TjmError::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn tjm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn tjm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tjm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an expression such as `St(2,nu) x St(2,nu^-1)`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjm_expr_parse(text: *const c_char, out: *mut *mut TjmExpr) -> TjmError {
    guard(|| {
        null_out(out)?;
        let e = parse::parse_expr(read_str(text)?).map_err(core_err)?;
        *out = Box::into_raw(Box::new(TjmExpr(e)));
        Ok(())
    })
}

/// # Safety
/// `e` must be NULL or a handle from [`tjm_expr_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tjm_expr_free(e: *mut TjmExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Rank `m` of the group `G_m` the expression lives on; 0 for NULL.
///
/// # Safety
/// `e` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjm_expr_rank(e: *const TjmExpr) -> usize {
    e.as_ref().map_or(0, |e| e.0.rank())
}

/// Canonical text of the expression, or NULL for a NULL handle.
///
/// # Safety
/// `e` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjm_expr_to_string(e: *const TjmExpr) -> *mut c_char {
    e.as_ref().map_or(ptr::null_mut(), |e| to_c_string(e.0.to_string()))
}

/// Zelevinsky dual of a multisegment given as text, e.g. `{[-1/2..1/2]}`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjm_mw_dual(text: *const c_char, out: *mut *mut c_char) -> TjmError {
    guard(|| {
        null_out(out)?;
        let m = parse::parse_multisegment(read_str(text)?).map_err(core_err)?;
        *out = to_c_string(zelevinsky::mw_dual(&m).to_string());
        Ok(())
    })
}

/// Twisted Jacquet module of `rho1 x rho2` on `G_2n`, with `rho1` of rank `r`.
///
/// # Safety
/// `rho1`, `rho2` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjm_filtration(
    n: usize,
    r: usize,
    rho1: *const TjmExpr,
    rho2: *const TjmExpr,
    out: *mut *mut TjmVerdict,
) -> TjmError {
    guard(|| {
        null_out(out)?;
        let (Some(a), Some(b)) = (rho1.as_ref(), rho2.as_ref()) else {
            return Err((TjmError::NullPointer, "null expression".into()));
        };
        let v = jacquet::tjm_filtration(n, r, &a.0, &b.0).map_err(core_err)?;
        *out = Box::into_raw(Box::new(TjmVerdict(v)));
        Ok(())
    })
}

/// # Safety
/// `v` must be NULL or a handle from [`tjm_filtration`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tjm_verdict_free(v: *mut TjmVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Overall status; `Unknown` for a NULL handle.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjm_verdict_status(v: *const TjmVerdict) -> TjmStatus {
    match v.as_ref().map(|v| v.0.status) {
        Some(Status::Zero) => TjmStatus::Zero,
        Some(Status::NonZero) => TjmStatus::NonZero,
        _ => TjmStatus::Unknown,
    }
}

/// The resolved `Delta G_n`-module as text, or NULL when unresolved.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjm_verdict_module(v: *const TjmVerdict) -> *mut c_char {
    v.as_ref()
        .and_then(|v| v.0.resolved_module.as_ref())
        .map_or(ptr::null_mut(), |m| to_c_string(m.to_string()))
}

/// The full verdict, with per-factor twists, as JSON.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tjm_verdict_json(v: *const TjmVerdict) -> *mut c_char {
    v.as_ref().map_or(ptr::null_mut(), |v| {
        serde_json::to_string(&v.0).map_or(ptr::null_mut(), to_c_string)
    })
}

/// Whether the adjoint-pole predicate predicts a zero module for `e` on
/// `G_2n`.
///
/// # Safety
/// `e` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tjm_conjecture_predicts_zero(e: *const TjmExpr, n: usize, out: *mut bool) -> TjmError {
    guard(|| {
        null_out(out)?;
        let e = e
            .as_ref()
            .ok_or((TjmError::NullPointer, "null expression".to_string()))?;
        *out = lfun::conjecture_check(&e.0, n).map_err(core_err)?.predicted_tjm_zero;
        Ok(())
    })
}

/// Run the `tjm` command line with `argv[0..argc]` (without the program
/// name). Stdin is empty, so expression arguments are required. Both output
/// strings are always set on success and must be freed.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; the out pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn tjm_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
    exit_code: *mut c_int,
) -> TjmError {
    guard(|| {
        null_out(out_stdout)?;
        null_out(out_stderr)?;
        null_out(exit_code)?;
        if argv.is_null() && argc > 0 {
            return Err((TjmError::NullPointer, "null argv".into()));
        }
        let mut args = vec!["tjm".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let mut empty: &[u8] = b"";
        let o = tjm_core::cli::run_args(args, &mut empty);
        *out_stdout = to_c_string(o.stdout);
        *out_stderr = to_c_string(o.stderr);
        *exit_code = o.code;
        Ok(())
    })
}
