use std::ffi::{c_char, CStr, CString};
use std::ptr;

use eulersum_ffi::*;

fn last_error() -> String {
    let n = es_last_error_length();
    let mut buf = vec![0 as c_char; n + 1];
    let full = unsafe { es_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(full, n);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { es_string_free(s) };
    out
}

#[test]
fn special_functions() {
    let mut v = 0.0;
    assert_eq!(unsafe { es_digamma(1.0, &mut v) }, EsStatus::Ok);
    assert!((v + 0.577_215_664_901_532_9).abs() < 1e-15);
    assert_eq!(unsafe { es_zeta(3, &mut v) }, EsStatus::Ok);
    assert!((v - 1.202_056_903_159_594_3).abs() < 1e-15);
    assert_eq!(es_last_error_length(), 0);
    assert_eq!(unsafe { es_digamma(-2.0, &mut v) }, EsStatus::Domain);
    assert!(last_error().contains("digamma"));
    assert_eq!(unsafe { es_trigamma(1.0, ptr::null_mut()) }, EsStatus::NullPointer);
    assert!((es_clausen2(std::f64::consts::FRAC_PI_2) - 0.915_965_594_177_219).abs() < 1e-15);
}

#[test]
fn closed_forms() {
    let mut cf = ptr::null_mut();
    assert_eq!(unsafe { es_theorem1_closed_form(4, false, &mut cf) }, EsStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { es_closed_form_to_string(cf, &mut s) }, EsStatus::Ok);
    assert_eq!(take_string(s), "67/8*zeta(3) - 2*pi*Cl2(1/2*pi)");

    let id = CString::new("T1.k4").unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { es_catalog_rhs(id.as_ptr(), &mut cat) }, EsStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { es_closed_form_equal(cf, cat, &mut same) }, EsStatus::Ok);
    assert!(same);
    let mut v = 0.0;
    assert_eq!(unsafe { es_closed_form_eval(cat, &mut v) }, EsStatus::Ok);
    assert!((v - 4.312_045_000_745_28).abs() < 1e-13);
    unsafe {
        es_closed_form_free(cf);
        es_closed_form_free(cat);
        es_closed_form_free(ptr::null_mut());
    }
    assert_eq!(unsafe { es_theorem1_closed_form(0, false, &mut cf) }, EsStatus::Domain);
}

#[test]
fn catalog_and_verify() {
    assert_eq!(es_catalog_len(), 31);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { es_catalog_id(0, &mut s) }, EsStatus::Ok);
    assert_eq!(take_string(s), "T1.k1");
    assert_eq!(unsafe { es_catalog_id(999, &mut s) }, EsStatus::Domain);

    let id = CString::new("R2").unwrap();
    let mut r = EsReport {
        lhs: 0.0,
        rhs: 0.0,
        abs_diff: 0.0,
        tol: 0.0,
        error_estimate: 0.0,
        seconds: 0.0,
        terms: 0,
        pass: false,
    };
    assert_eq!(unsafe { es_verify(id.as_ptr(), 0.0, &mut r) }, EsStatus::Ok);
    assert!(r.pass && r.abs_diff <= 1e-9 && r.tol == 1e-9);

    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { es_verify(bad.as_ptr(), 0.0, &mut r) }, EsStatus::UnknownId);
    assert!(last_error().contains("nope"));
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { es_verify(invalid.as_ptr(), 0.0, &mut r) }, EsStatus::InvalidUtf8);
    assert_eq!(unsafe { es_verify(ptr::null(), 0.0, &mut r) }, EsStatus::NullPointer);
}

#[test]
fn report_sets() {
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { es_verify_all(2, &mut set) }, EsStatus::Ok);
    let n = unsafe { es_report_set_len(set) };
    assert_eq!(n, 47);
    let mut r = EsReport {
        lhs: 0.0,
        rhs: 0.0,
        abs_diff: 0.0,
        tol: 0.0,
        error_estimate: 0.0,
        seconds: 0.0,
        terms: 0,
        pass: false,
    };
    for i in 0..n {
        let mut id = ptr::null_mut();
        assert_eq!(unsafe { es_report_set_get(set, i, &mut r, &mut id) }, EsStatus::Ok);
        let id = take_string(id);
        assert!(r.pass, "{id}: {r:?}");
    }
    assert_eq!(unsafe { es_report_set_get(set, n, &mut r, ptr::null_mut()) }, EsStatus::Domain);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { es_report_set_to_json(set, &mut json) }, EsStatus::Ok);
    assert_eq!(take_string(json).lines().count(), 47);
    unsafe { es_report_set_free(set) };
    assert_eq!(unsafe { es_report_set_len(ptr::null()) }, 0);
}

#[test]
fn errors_are_per_thread() {
    let mut v = 0.0;
    assert_eq!(unsafe { es_digamma(0.0, &mut v) }, EsStatus::Domain);
    let other = std::thread::spawn(|| es_last_error_length()).join().unwrap();
    assert_eq!(other, 0);
    assert!(es_last_error_length() > 0);
}
