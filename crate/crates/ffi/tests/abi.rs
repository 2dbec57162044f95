use std::ffi::{CStr, CString};
use std::ptr;

use tjm_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tjm_string_free(s) };
    out
}

fn parse(text: &str) -> *mut TjmExpr {
    let c = CString::new(text).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { tjm_expr_parse(c.as_ptr(), &mut e) }, TjmError::Ok);
    e
}

#[test]
fn parse_and_filtration() {
    let a = parse("St(2,nu)");
    let b = parse("St(2,nu^-1)");
    assert_eq!(unsafe { tjm_expr_rank(a) }, 2);
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { tjm_filtration(2, 2, a, b, &mut v) }, TjmError::Ok);
    assert_eq!(unsafe { tjm_verdict_status(v) }, TjmStatus::NonZero);
    let module = take(unsafe { tjm_verdict_module(v) });
    assert!(module.contains("St(2,nu)"), "{module}");
    let json = take(unsafe { tjm_verdict_json(v) });
    assert!(json.starts_with('{'));
    unsafe {
        tjm_verdict_free(v);
        tjm_expr_free(a);
        tjm_expr_free(b);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("St(2,").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { tjm_expr_parse(bad.as_ptr(), &mut e) }, TjmError::Parse);
    assert!(e.is_null());
    let msg = unsafe { CStr::from_ptr(tjm_last_error_message()) }.to_str().unwrap();
    assert!(msg.contains("parse error"), "{msg}");

    assert_eq!(unsafe { tjm_expr_parse(ptr::null(), &mut e) }, TjmError::NullPointer);

    let a = parse("char(1,chi)");
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { tjm_filtration(2, 1, a, a, &mut v) }, TjmError::OutOfRange);
    assert_eq!(unsafe { tjm_verdict_status(ptr::null()) }, TjmStatus::Unknown);
    unsafe { tjm_expr_free(a) };
}

#[test]
fn dual_and_conjecture() {
    let m = CString::new("{[-3/2..3/2]}").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tjm_mw_dual(m.as_ptr(), &mut out) }, TjmError::Ok);
    assert_eq!(take(out), "{[3/2], [1/2], [-1/2], [-3/2]}");

    let tau = parse("L{[1/2..3/2],[-3/2..-1/2]}");
    let mut zero = true;
    assert_eq!(unsafe { tjm_conjecture_predicts_zero(tau, 2, &mut zero) }, TjmError::Ok);
    assert!(!zero);
    unsafe { tjm_expr_free(tau) };
}

#[test]
fn run_command_line() {
    let args: Vec<CString> = ["tjm-table", "sigma"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
    assert_eq!(
        unsafe { tjm_run(argv.as_ptr(), argv.len(), &mut out, &mut err, &mut code) },
        TjmError::Ok
    );
    assert_eq!(code, 0);
    assert_eq!(take(out).lines().count(), 5);
    assert_eq!(take(err), "");
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tjm.h")).unwrap();
    for name in [
        "tjm_expr_parse",
        "tjm_filtration",
        "tjm_verdict_free",
        "tjm_run",
        "TJM_ERROR_PARSE",
        "typedef struct TjmExpr TjmExpr",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
    let v = unsafe { CStr::from_ptr(tjm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
