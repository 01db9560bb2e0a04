use std::ffi::{CStr, CString};
use std::ptr;

use cod_ffi::*;

const D2: &str = "4 4 2\nz1 0 0 z2\n0 z1 -z2 0\n0 z2* z1* 0\n-z2* 0 0 z1*";

fn parse(text: &str) -> *mut CodDesign {
    let c = CString::new(text).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { cod_design_parse(c.as_ptr(), &mut d) }, CodStatus::Ok);
    assert!(!d.is_null());
    d
}

fn last_error() -> String {
    let p = cod_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn serialize(d: *const CodDesign) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cod_design_serialize(d, &mut s) }, CodStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { cod_string_free(s) };
    out
}

#[test]
fn parse_roundtrip_and_checks() {
    let d = parse(D2);
    assert_eq!(serialize(d), D2);
    let (mut p, mut n, mut k) = (0, 0, 0);
    unsafe {
        assert_eq!(cod_design_dims(d, &mut p, &mut n, &mut k), CodStatus::Ok);
        assert_eq!((p, n, k), (4, 4, 2));
        let mut flag = false;
        assert_eq!(cod_is_cod(d, &mut flag), CodStatus::Ok);
        assert!(flag);
        assert_eq!(cod_is_bcod(d, &mut flag), CodStatus::Ok);
        assert!(flag);
        assert_eq!(cod_is_atomic(d, &mut flag), CodStatus::Ok);
        assert!(flag);
        let mut w = 0;
        assert_eq!(cod_standard_form_witness(d, &mut w), CodStatus::Ok);
        assert_eq!(w, 1);
        let mut rc = 0;
        assert_eq!(cod_find_complement(d, 1, &mut rc), CodStatus::Ok);
        assert_eq!(rc, 3);
        let (mut passed, mut eq) = (false, false);
        assert_eq!(cod_verify_delay_bound(d, &mut passed, &mut eq), CodStatus::Ok);
        assert!(passed && eq);
        cod_design_free(d);
    }
}

#[test]
fn parse_errors_set_message() {
    let bad = CString::new("2 2 1\nz1 q\n0 z1*").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { cod_design_parse(bad.as_ptr(), &mut d) }, CodStatus::ParseError);
    assert!(d.is_null());
    assert!(last_error().contains("q"));
    assert_eq!(unsafe { cod_design_parse(ptr::null(), &mut d) }, CodStatus::NullPointer);
}

#[test]
fn non_cod_is_not_bcod() {
    let d = parse("2 2 2\nz1 z2\nz2* z1*");
    let mut flag = true;
    unsafe {
        assert_eq!(cod_is_cod(d, &mut flag), CodStatus::Ok);
        assert!(!flag);
        assert_eq!(cod_is_bcod(d, &mut flag), CodStatus::Ok);
        assert!(!flag);
        assert_eq!(cod_is_atomic(d, &mut flag), CodStatus::NotBcod);
        cod_design_free(d);
    }
}

#[test]
fn reduce_to_second_variable() {
    let d = parse(D2);
    let mut out = ptr::null_mut();
    let mut ops = ptr::null_mut();
    unsafe {
        assert_eq!(cod_to_bj_form(d, 2, &mut out, &mut ops), CodStatus::Ok);
        assert_eq!(
            serialize(out),
            "4 4 2\nz2 0 0 -z1\n0 z2 z1 0\n0 -z1* z2* 0\nz1* 0 0 z2*"
        );
        let script = CStr::from_ptr(ops).to_str().unwrap().to_string();
        assert!(script.starts_with("colperm 3 2 1 4\n"));
        cod_string_free(ops);
        cod_design_free(out);
        assert_eq!(cod_to_bj_form(d, 3, &mut out, ptr::null_mut()), CodStatus::InvalidArgument);
        cod_design_free(d);
    }
}

#[test]
fn construct_and_bounds() {
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(cod_design_construct(3, &mut d), CodStatus::Ok);
        let (mut p, mut n, mut k) = (0, 0, 0);
        cod_design_dims(d, &mut p, &mut n, &mut k);
        assert_eq!((p, n, k), (8, 6, 4));
        cod_design_free(d);
        assert_eq!(cod_design_construct(0, &mut d), CodStatus::InvalidArgument);
        assert!(!last_error().is_empty());

        let mut delta = 0;
        assert_eq!(cod_delta(6, &mut delta), CodStatus::Ok);
        assert_eq!(delta, 3);
        let mut v = 0;
        assert_eq!(cod_max_rate_delay_bound(6, &mut v), CodStatus::Ok);
        assert_eq!(v, 30);
        assert_eq!(cod_delta(0, &mut delta), CodStatus::InvalidArgument);
    }
}

#[test]
fn search_statuses() {
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(cod_search_min_delay(4, 3, 2, 0, &mut d), CodStatus::NoneExists);
        assert!(d.is_null());
        assert_eq!(cod_search_min_delay(4, 4, 2, 0, &mut d), CodStatus::Ok);
        assert_eq!(
            serialize(d),
            "4 4 2\n0 0 z1 z2\n0 0 z2* -z1*\nz1 z2 0 0\nz2* -z1* 0 0"
        );
        cod_design_free(d);
        let mut d = ptr::null_mut();
        assert_eq!(cod_search_min_delay(4, 4, 1, 10, &mut d), CodStatus::ResourceLimit);
        assert_eq!(cod_search_min_delay(3, 4, 1, 0, &mut d), CodStatus::InvalidArgument);
    }
}

#[test]
fn null_handles_are_rejected() {
    let mut flag = false;
    unsafe {
        assert_eq!(cod_is_cod(ptr::null(), &mut flag), CodStatus::NullPointer);
        cod_design_free(ptr::null_mut());
        cod_string_free(ptr::null_mut());
    }
    assert!(last_error().contains("null"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/cod.h");
    for name in [
        "cod_last_error_message",
        "cod_design_parse",
        "cod_design_construct",
        "cod_design_free",
        "cod_design_serialize",
        "cod_string_free",
        "cod_design_dims",
        "cod_is_cod",
        "cod_is_bcod",
        "cod_standard_form_witness",
        "cod_to_bj_form",
        "cod_find_complement",
        "cod_verify_delay_bound",
        "cod_is_atomic",
        "cod_delta",
        "cod_max_rate_delay_bound",
        "cod_search_min_delay",
        "COD_STATUS_NONE_EXISTS",
    ] {
        assert!(header.contains(name), "{name} missing from cod.h");
    }
}
