use std::ffi::{CStr, CString};
use std::ptr;

use downcat_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    dc_string_free(s);
    out
}

#[test]
fn w3_down_through_the_c_api() {
    unsafe {
        let name = CString::new("W3").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(dc_category_builtin(name.as_ptr(), &mut c), DcStatus::Ok);
        assert_eq!(dc_category_num_objects(c), 3);
        assert_eq!(dc_category_num_morphisms(c), 6);
        assert_eq!(dc_category_validate(c, ptr::null_mut()), DcStatus::Ok);

        let mut d = ptr::null_mut();
        assert_eq!(dc_down_build(c, &mut d), DcStatus::Ok);
        assert_eq!(dc_down_num_objects(d), 4);
        assert_eq!(dc_down_is_direct(d), 1);
        let mut s = ptr::null_mut();
        assert_eq!(dc_down_to_json(d, &mut s), DcStatus::Ok);
        assert!(take(s).contains("\"direct\": true"));
        dc_down_free(d);
        dc_category_free(c);
    }
}

#[test]
fn json_round_trip_and_errors() {
    unsafe {
        let name = CString::new("TS1").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(dc_category_builtin(name.as_ptr(), &mut c), DcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(dc_category_to_json(c, &mut s), DcStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut c2 = ptr::null_mut();
        assert_eq!(dc_category_from_json(json.as_ptr(), &mut c2), DcStatus::Ok);
        assert_eq!(dc_category_num_morphisms(c2), dc_category_num_morphisms(c));
        dc_category_free(c2);
        dc_category_free(c);

        let bad = CString::new("{\"objects\": 3").unwrap();
        let mut c3 = ptr::null_mut();
        assert_eq!(dc_category_from_json(bad.as_ptr(), &mut c3), DcStatus::InputError);
        assert!(c3.is_null());
        assert!(!dc_last_error().is_null());
        assert_eq!(dc_category_from_json(ptr::null(), &mut c3), DcStatus::NullPointer);
    }
}

#[test]
fn plain_category_has_no_down() {
    let json = r#"{"objects":["a"],"morphisms":[{"id":0,"src":"a","dst":"a","label":"1"}],"identities":{"a":0},"compose":[[0,0,0]]}"#;
    unsafe {
        let text = CString::new(json).unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(dc_category_from_json(text.as_ptr(), &mut c), DcStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(dc_down_build(c, &mut d), DcStatus::InputError);
        let mut dot = ptr::null_mut();
        assert_eq!(dc_category_to_dot(c, &mut dot), DcStatus::Ok);
        assert!(take(dot).starts_with("digraph"));
        dc_category_free(c);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/downcat.h")).unwrap();
    for f in [
        "dc_last_error",
        "dc_string_free",
        "dc_category_from_json",
        "dc_category_builtin",
        "dc_category_validate",
        "dc_down_build",
        "dc_down_build_star",
        "dc_down_is_direct",
        "dc_selftest",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f}");
    }
    assert!(h.contains("typedef struct DcCategory DcCategory;"));
}
