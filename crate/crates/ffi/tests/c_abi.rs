use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use cartierlab_ffi::*;

const HEADER: &str = include_str!("../include/cartierlab.h");

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    cl_string_free(s);
    out
}

#[test]
fn header_declares_the_abi() {
    for decl in [
        "typedef struct ClRing ClRing;",
        "typedef struct ClPoly ClPoly;",
        "CL_STATUS_OK = 0,",
        "CL_STATUS_NOT_STABILIZED = 4,",
        "CL_STATUS_INTERNAL = 6,",
        "enum ClStatus cl_ring_new(uint64_t p, const char *vars, struct ClRing **out);",
        "void cl_ring_free(struct ClRing *ring);",
        "enum ClStatus cl_poly_parse(const struct ClRing *ring, const char *s, struct ClPoly **out);",
        "void cl_poly_free(struct ClPoly *poly);",
        "enum ClStatus cl_poly_to_string(const struct ClPoly *poly, char **out);",
        "void cl_string_free(char *s);",
        "enum ClStatus cl_cartier_apply(uint32_t e,",
        "enum ClStatus cl_tau(const struct ClPoly *g,",
        "enum ClStatus cl_run_job_json(const char *job, char **out_report, int32_t *out_exit_code);",
        "const char *cl_last_error_message(void);",
    ] {
        assert!(HEADER.contains(decl), "header lacks `{decl}`");
    }
    assert!(HEADER.contains("#ifndef CARTIERLAB_H"));
}

#[test]
fn cartier_and_tau_through_the_abi() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(cl_ring_new(3, c"x".as_ptr(), &mut ring), ClStatus::Ok);
        let (mut f, mut out) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(cl_poly_parse(ring, c"x^5".as_ptr(), &mut f), ClStatus::Ok);
        assert_eq!(cl_cartier_apply(1, ptr::null(), f, &mut out), ClStatus::Ok);
        let mut s = ptr::null_mut();
        cl_poly_to_string(out, &mut s);
        assert_eq!(take(s), "x");
        cl_poly_free(out);
        cl_poly_free(f);
        cl_ring_free(ring);

        assert_eq!(cl_ring_new(7, c"x, y".as_ptr(), &mut ring), ClStatus::Ok);
        let mut g = ptr::null_mut();
        cl_poly_parse(ring, c"x^2+y^3".as_ptr(), &mut g);
        let (mut ideal, mut e) = (ptr::null_mut(), 99u32);
        assert_eq!(cl_tau(g, 5, 6, 0, &mut ideal, &mut e), ClStatus::Ok);
        assert_eq!(take(ideal), "(x, y)");
        assert!(e <= 3);
        assert_eq!(cl_tau(g, 5, 6, 1, &mut ideal, ptr::null_mut()), ClStatus::NotStabilized);
        let msg = CStr::from_ptr(cl_last_error_message()).to_str().unwrap();
        assert!(msg.contains("did not stabilize"));
        assert_eq!(cl_tau(g, 1, 0, 0, &mut ideal, ptr::null_mut()), ClStatus::Validation);
        cl_poly_free(g);
        cl_ring_free(ring);
    }
}

#[test]
fn mixed_rings_are_rejected() {
    unsafe {
        let (mut r1, mut r2) = (ptr::null_mut(), ptr::null_mut());
        cl_ring_new(5, c"x".as_ptr(), &mut r1);
        cl_ring_new(5, c"x,y".as_ptr(), &mut r2);
        let (mut h, mut f, mut out) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        cl_poly_parse(r1, c"x".as_ptr(), &mut h);
        cl_poly_parse(r2, c"x*y".as_ptr(), &mut f);
        assert_eq!(cl_cartier_apply(1, h, f, &mut out), ClStatus::Validation);
        assert!(out.is_null());
        cl_poly_free(h);
        cl_poly_free(f);
        cl_ring_free(r1);
        cl_ring_free(r2);
    }
}

#[test]
fn job_json_through_the_abi() {
    let job = CString::new(r#"{"command":"cartier","ring":{"p":3,"vars":["x"]},"e":1,"h":"1","f":"x^5"}"#).unwrap();
    unsafe {
        let (mut report, mut code) = (ptr::null_mut(), -1);
        assert_eq!(cl_run_job_json(job.as_ptr(), &mut report, &mut code), ClStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!((code, v["result"]["value"].as_str()), (0, Some("x")));

        let bad = CString::new(r#"{"command":"cartier","oops":1}"#).unwrap();
        assert_eq!(cl_run_job_json(bad.as_ptr(), &mut report, &mut code), ClStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("job_format")));
        assert_eq!(cl_run_job_json(ptr::null(), &mut report, &mut code), ClStatus::InvalidArgument);
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "cartierlab.h"

int main(void) {
    ClRing *ring = NULL;
    ClPoly *f = NULL, *out = NULL;
    char *s = NULL;
    if (cl_ring_new(3, "x", &ring) != CL_STATUS_OK) return 1;
    if (cl_poly_parse(ring, "x^5", &f) != CL_STATUS_OK) return 2;
    if (cl_cartier_apply(1, NULL, f, &out) != CL_STATUS_OK) return 3;
    cl_poly_to_string(out, &s);
    int ok = strcmp(s, "x") == 0;
    printf("%s\n", s);
    cl_string_free(s);
    if (cl_poly_parse(ring, "x^^2", &f) != CL_STATUS_PARSE) return 4;
    if (cl_last_error_message() == NULL) return 5;
    cl_poly_free(out);
    cl_ring_free(ring);
    return ok ? 0 : 6;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libcartierlab_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = work.path().join("smoke");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x\n");
}
