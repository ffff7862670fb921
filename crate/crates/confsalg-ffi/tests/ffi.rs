//! The C ABI called from Rust, plus a C program compiled against the
//! generated header and the static library.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use confsalg_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    confsalg_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(confsalg_last_error()).to_str().unwrap().to_string()
}

#[test]
fn build_query_and_free() {
    unsafe {
        let mut h: *mut ConfsalgAlgebra = ptr::null_mut();
        let st = confsalg_catalog_build(cstr("N4alpha").as_ptr(), cstr("2").as_ptr(), &mut h);
        assert_eq!(st, ConfsalgStatus::Ok);
        let mut dim = 0usize;
        assert_eq!(confsalg_algebra_dim(h, &mut dim), ConfsalgStatus::Ok);
        assert_eq!(dim, 16);
        let mut simple = false;
        assert_eq!(confsalg_algebra_is_simple(h, &mut simple), ConfsalgStatus::Ok);
        assert!(simple);
        let mut failed = usize::MAX;
        let st = confsalg_algebra_verify(h, CONFSALG_AXIOMS_P | CONFSALG_AXIOMS_H, 4, 4, 4, &mut failed);
        assert_eq!((st, failed), (ConfsalgStatus::Ok, 0));
        let mut p: *mut c_char = ptr::null_mut();
        assert_eq!(confsalg_algebra_charpoly(h, &mut p), ConfsalgStatus::Ok);
        assert_eq!(take_string(p), "t^6-2*t^5-13*t^4+20*t^3+39*t^2-18*t-27");
        confsalg_algebra_free(h);
    }
}

#[test]
fn json_round_trip_through_handles() {
    unsafe {
        let mut h: *mut ConfsalgAlgebra = ptr::null_mut();
        assert_eq!(confsalg_catalog_build(cstr("S2").as_ptr(), ptr::null(), &mut h), ConfsalgStatus::Ok);
        let mut p: *mut c_char = ptr::null_mut();
        assert_eq!(confsalg_algebra_to_json(h, &mut p), ConfsalgStatus::Ok);
        let json = take_string(p);
        let mut h2: *mut ConfsalgAlgebra = ptr::null_mut();
        assert_eq!(confsalg_algebra_from_json(cstr(&json).as_ptr(), &mut h2), ConfsalgStatus::Ok);
        assert_eq!(confsalg_algebra_to_json(h2, &mut p), ConfsalgStatus::Ok);
        assert_eq!(take_string(p), json);
        confsalg_algebra_free(h);
        confsalg_algebra_free(h2);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut h: *mut ConfsalgAlgebra = ptr::null_mut();
        assert_eq!(confsalg_catalog_build(cstr("K9").as_ptr(), ptr::null(), &mut h), ConfsalgStatus::InvalidInput);
        assert!(last_error().contains("K9"));
        assert!(h.is_null());
        assert_eq!(
            confsalg_catalog_build(cstr("N4alpha").as_ptr(), cstr("2+").as_ptr(), &mut h),
            ConfsalgStatus::InvalidInput
        );
        assert_eq!(confsalg_catalog_build(ptr::null(), ptr::null(), &mut h), ConfsalgStatus::NullPointer);
        assert_eq!(confsalg_algebra_from_json(cstr("{").as_ptr(), &mut h), ConfsalgStatus::InvalidInput);
        let mut dim = 0usize;
        assert_eq!(confsalg_algebra_dim(ptr::null(), &mut dim), ConfsalgStatus::NullPointer);
        confsalg_algebra_free(ptr::null_mut());
        confsalg_string_free(ptr::null_mut());
    }
}

#[test]
fn corrupted_algebra_fails_verification() {
    unsafe {
        let mut h: *mut ConfsalgAlgebra = ptr::null_mut();
        assert_eq!(confsalg_catalog_build(cstr("K2").as_ptr(), ptr::null(), &mut h), ConfsalgStatus::Ok);
        let mut p: *mut c_char = ptr::null_mut();
        confsalg_algebra_to_json(h, &mut p);
        let mut v: serde_json::Value = serde_json::from_str(&take_string(p)).unwrap();
        // Negate the first nonzero structure constant.
        let term = v["products"]
            .as_array_mut()
            .unwrap()
            .iter_mut()
            .find_map(|p| p["terms"].as_array_mut().unwrap().first_mut())
            .unwrap();
        let c = term["coeff"].as_str().unwrap().to_string();
        term["coeff"] = serde_json::Value::String(format!("-({c})"));
        let mut bad: *mut ConfsalgAlgebra = ptr::null_mut();
        assert_eq!(confsalg_algebra_from_json(cstr(&v.to_string()).as_ptr(), &mut bad), ConfsalgStatus::Ok);
        let mut failed = 0usize;
        assert_eq!(confsalg_algebra_verify(bad, CONFSALG_AXIOMS_P, 4, 4, 4, &mut failed), ConfsalgStatus::CheckFailed);
        assert!(failed > 0);
        assert_eq!(confsalg_algebra_verify(bad, 0, 4, 4, 4, ptr::null_mut()), ConfsalgStatus::InvalidInput);
        confsalg_algebra_free(bad);
        confsalg_algebra_free(h);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "confsalg.h"

int main(void) {
    ConfsalgAlgebra *h = NULL;
    if (confsalg_catalog_build("K3", NULL, &h) != CONFSALG_STATUS_OK) return 10;
    size_t dim = 0;
    if (confsalg_algebra_dim(h, &dim) != CONFSALG_STATUS_OK || dim != 8) return 11;
    size_t failed = 1;
    if (confsalg_algebra_verify(h, CONFSALG_AXIOMS_P | CONFSALG_AXIOMS_H, 4, 4, 4, &failed) != CONFSALG_STATUS_OK) return 12;
    if (failed != 0) return 13;
    confsalg_algebra_free(h);
    if (confsalg_catalog_build("nope", NULL, &h) != CONFSALG_STATUS_INVALID_INPUT) return 14;
    if (strlen(confsalg_last_error()) == 0) return 15;
    printf("ok %zu\n", dim);
    return 0;
}
"#;

#[test]
fn c_program_links_against_header_and_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler available; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // The test binary lives in <target>/<profile>/deps; the library one level up.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    let lib = lib_dir.join("libconfsalg_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let st = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "ok 8\n");
}
