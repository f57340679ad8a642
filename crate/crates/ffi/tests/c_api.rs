use std::ffi::{CStr, CString};
use std::ptr;

use qarith_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qarith_last_error()) }.to_string_lossy().into_owned()
}

fn build(family: &str, n: usize) -> *mut QarithCircuit {
    let f = CString::new(family).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { qarith_circuit_build(f.as_ptr(), n, &mut c) }, QarithStatus::Ok);
    assert!(!c.is_null());
    c
}

#[test]
fn build_expand_report() {
    let c = build("ctrl-adder", 4);
    let decomp = CString::new("4at1").unwrap();
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(qarith_circuit_expand(c, decomp.as_ptr(), false, &mut e), QarithStatus::Ok);
        assert!(qarith_circuit_len(e) > qarith_circuit_len(c));
        let mut r = QarithReport::default();
        assert_eq!(qarith_circuit_report(e, false, &mut r), QarithStatus::Ok);
        assert_eq!((r.t_depth, r.width, r.cnot_count, r.unexpanded), (16, 15, 234, 0));
        assert_eq!(r.kq, r.depth * r.width);
        qarith_circuit_free(e);
        qarith_circuit_free(c);
    }
}

#[test]
fn text_round_trip() {
    let c = build("takahashi", 3);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qarith_circuit_to_text(c, &mut s), QarithStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(qarith_circuit_parse(s, &mut back), QarithStatus::Ok);
        assert_eq!(qarith_circuit_len(back), qarith_circuit_len(c));
        qarith_string_free(s);
        qarith_circuit_free(back);
        qarith_circuit_free(c);
    }
}

#[test]
fn error_codes_and_messages() {
    let bad = CString::new("subtractor").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(qarith_circuit_build(bad.as_ptr(), 4, &mut c), QarithStatus::UnknownName);
        assert!(last_error().contains("subtractor"));
        assert!(c.is_null());

        let fam = CString::new("ctrl-adder").unwrap();
        assert_eq!(qarith_circuit_build(fam.as_ptr(), 1, &mut c), QarithStatus::InvalidParam);
        assert_eq!(qarith_circuit_build(ptr::null(), 4, &mut c), QarithStatus::NullPointer);
        assert_eq!(qarith_circuit_build(fam.as_ptr(), 4, ptr::null_mut()), QarithStatus::NullPointer);

        let junk = CString::new("FROB q0\n").unwrap();
        assert_eq!(qarith_circuit_parse(junk.as_ptr(), &mut c), QarithStatus::Parse);

        let mut r = QarithReport::default();
        assert_eq!(qarith_circuit_report(ptr::null(), false, &mut r), QarithStatus::NullPointer);
        assert_eq!(qarith_circuit_len(ptr::null()), 0);
        qarith_circuit_free(ptr::null_mut());
        qarith_string_free(ptr::null_mut());
    }
}

#[test]
fn graph_metrics() {
    let name = CString::new("grid_4x5").unwrap();
    let (mut l, mut cc) = (0.0, 1.0);
    unsafe {
        assert_eq!(qarith_graph_metrics(name.as_ptr(), &mut l, &mut cc), QarithStatus::Ok);
    }
    assert_eq!((l, cc), (3.0, 0.0));
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(qarith_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qarith.h")).unwrap();
    for sym in [
        "qarith_last_error",
        "qarith_version",
        "qarith_circuit_build",
        "qarith_circuit_parse",
        "qarith_circuit_expand",
        "qarith_circuit_len",
        "qarith_circuit_report",
        "qarith_circuit_to_text",
        "qarith_circuit_free",
        "qarith_string_free",
        "qarith_graph_metrics",
        "QARITH_STATUS_CAPACITY",
        "typedef struct QarithCircuit QarithCircuit",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
