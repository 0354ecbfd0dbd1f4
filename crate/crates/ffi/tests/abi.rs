use std::ffi::{CStr, CString};
use std::ptr;

use plie_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(plie_last_error()) }.to_string_lossy().into_owned()
}

fn query(p: u64, variant: u32, gens: &[i64], w: u64, lo: i64, hi: i64, basis: bool) -> Result<*mut PlieQuery, PlieStatus> {
    let mut q = ptr::null_mut();
    let s = unsafe { plie_query_new(p, variant, gens.as_ptr(), gens.len(), w, lo, hi, basis, &mut q) };
    if s == PlieStatus::Ok {
        Ok(q)
    } else {
        Err(s)
    }
}

#[test]
fn compute_matches_library() {
    let q = query(2, PLIE_VARIANT_DELTA, &[-1, -2], 4, -20, 0, false).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { plie_compute(q, &mut r) }, PlieStatus::Ok);
    let lib = plie::dims(
        &plie::PLieQuery { p: 2, gens: vec![-1, -2], variant: plie::Variant::Delta, max_total_weight: 4, window: plie::DegreeWindow::new(-20, 0).unwrap(), basis: false },
        &plie::Guard::default(),
    )
    .unwrap()
    .dims
    .entries();
    let n = unsafe { plie_result_len(r) };
    assert_eq!(n, lib.len());
    for (idx, (weight, degree, dim)) in lib.iter().enumerate() {
        let (mut d, mut m, mut t) = (0i64, 0u64, 0u64);
        assert_eq!(unsafe { plie_result_entry(r, idx, &mut d, &mut m, &mut t) }, PlieStatus::Ok);
        assert_eq!((d, m, t), (*degree, *dim, weight.iter().sum()));
        let mut buf = [0u64; 2];
        let mut len = 0usize;
        assert_eq!(unsafe { plie_result_weight(r, idx, buf.as_mut_ptr(), buf.len(), &mut len) }, PlieStatus::Ok);
        assert_eq!(&buf[..len], weight.as_slice());
    }
    assert_eq!(unsafe { plie_result_entry(r, n, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) }, PlieStatus::OutOfRange);
    unsafe {
        plie_result_free(r);
        plie_query_free(q);
    }
}

#[test]
fn error_codes() {
    assert_eq!(query(4, PLIE_VARIANT_DELTA, &[-1], 3, -5, 0, false).unwrap_err(), PlieStatus::NotPrime);
    assert!(last_error().contains("prime"));
    assert_eq!(query(2, 9, &[-1], 3, -5, 0, false).unwrap_err(), PlieStatus::InvalidArgument);
    assert_eq!(query(2, PLIE_VARIANT_DELTA, &[-1], 3, 5, 0, false).unwrap_err(), PlieStatus::InvalidArgument);
    assert_eq!(query(2, PLIE_VARIANT_DELTA, &[], 3, -5, 0, false).unwrap_err(), PlieStatus::InvalidArgument);
    assert_eq!(query(2, PLIE_VARIANT_DELTA, &[-1], 1 << 40, -5, 0, false).unwrap_err(), PlieStatus::GuardExceeded);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { plie_compute(ptr::null(), &mut r) }, PlieStatus::NullPointer);
    assert!(r.is_null());
    assert_eq!(unsafe { plie_result_len(ptr::null()) }, 0);
    unsafe {
        plie_query_free(ptr::null_mut());
        plie_result_free(ptr::null_mut());
        plie_string_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip() {
    let text = CString::new(r#"{"p":3,"gens":[-1],"variant":"einfty","max_total_weight":3,"window":{"lo":-12,"hi":4},"basis":true}"#).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { plie_query_from_json(text.as_ptr(), &mut q) }, PlieStatus::Ok);
    assert!(last_error().is_empty());
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { plie_compute(q, &mut r) }, PlieStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { plie_result_to_json(r, &mut s) }, PlieStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(json["p"], 3);
    assert_eq!(json["degree_window"], serde_json::json!([-12, 4]));
    let entries = json["entries"].as_array().unwrap();
    assert_eq!(entries.len(), unsafe { plie_result_len(r) });
    assert!(entries.iter().all(|e| e["basis"].as_array().unwrap().len() as u64 == e["dim"].as_u64().unwrap()));
    unsafe {
        plie_string_free(s);
        plie_result_free(r);
        plie_query_free(q);
    }
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { plie_query_from_json(bad.as_ptr(), &mut q) }, PlieStatus::InvalidArgument);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/plie.h")).unwrap();
    for f in [
        "plie_last_error",
        "plie_version",
        "plie_query_new",
        "plie_query_from_json",
        "plie_query_set_guard_n",
        "plie_query_free",
        "plie_compute",
        "plie_result_len",
        "plie_result_entry",
        "plie_result_weight",
        "plie_result_to_json",
        "plie_result_free",
        "plie_string_free",
        "PLIE_STATUS_GUARD_EXCEEDED",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    // skipped where no C compiler is installed
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", concat!(env!("CARGO_MANIFEST_DIR"), "/include/plie.h")])
        .status()
    else {
        return;
    };
    assert!(status.success());
}
