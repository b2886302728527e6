//! C ABI for cartierlab.
//!
//! Rings and polynomials cross the boundary as opaque handles. Fallible calls
//! return a [`ClStatus`]; on failure `cl_last_error_message` describes the
//! error until the next call on the same thread. Strings handed out by the
//! library are released with `cl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cartierlab::cli::run_job_text;
use cartierlab::frobenius::{cartier_apply, CartierMap};
use cartierlab::polyring::{parse_polynomial, Polynomial, RationalExponent, Ring, RingRef};
use cartierlab::testideal::{tau_polynomial, PrincipalPair, TauOptions};
use cartierlab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    /// Null pointer or text that is not UTF-8.
    InvalidArgument = 1,
    /// Polynomial syntax or unknown variable.
    Parse = 2,
    /// Input rejected by the library (non-prime modulus, ring mismatch, ...).
    Validation = 3,
    NotStabilized = 4,
    ResourceCap = 5,
    /// A panic inside the library.
    Internal = 6,
}

/// Polynomial ring over a prime field.
pub struct ClRing {
    ring: RingRef,
}

/// Polynomial in a `ClRing`.
pub struct ClPoly {
    poly: Polynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ClStatus, msg: impl Into<String>) -> ClStatus {
    set_error(msg.into());
    status
}

fn status_of(err: &Error) -> ClStatus {
    match err {
        Error::Syntax { .. } | Error::UnknownVariable(_) => ClStatus::Parse,
        Error::NotStabilized { .. } => ClStatus::NotStabilized,
        Error::ResourceCap { .. } => ClStatus::ResourceCap,
        _ => ClStatus::Validation,
    }
}

/// Runs `body` with the error slot cleared and panics turned into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), ClStatus>) -> ClStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(ClStatus::Internal, "panic inside cartierlab"),
    }
}

fn lib_err(err: Error) -> ClStatus {
    let status = status_of(&err);
    fail(status, err.to_string())
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, ClStatus> {
    if s.is_null() {
        return Err(fail(ClStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(ClStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, ClStatus> {
    p.as_ref()
        .ok_or_else(|| fail(ClStatus::InvalidArgument, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), ClStatus> {
    if out.is_null() {
        return Err(fail(ClStatus::InvalidArgument, "output pointer is null"));
    }
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next cartierlab call on this thread.
#[no_mangle]
pub extern "C" fn cl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates `F_p[vars]` from a comma-separated variable list such as `"x,y"`.
///
/// # Safety
/// `vars` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_ring_new(p: u64, vars: *const c_char, out: *mut *mut ClRing) -> ClStatus {
    guard(|| {
        check_out(out)?;
        let names: Vec<String> = text(vars, "vars")?.split(',').map(|v| v.trim().to_string()).collect();
        let ring = Ring::with_names(p, names).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ClRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from `cl_ring_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cl_ring_free(ring: *mut ClRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parses a polynomial such as `"x^2 + 3*y"` in `ring`.
///
/// # Safety
/// `ring` must be a live handle, `s` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_parse(ring: *const ClRing, s: *const c_char, out: *mut *mut ClPoly) -> ClStatus {
    guard(|| {
        check_out(out)?;
        let ring = handle(ring, "ring")?;
        let poly = parse_polynomial(text(s, "polynomial")?, &ring.ring).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ClPoly { poly }));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_free(poly: *mut ClPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text of `poly`; release with `cl_string_free`.
///
/// # Safety
/// `poly` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_to_string(poly: *const ClPoly, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        check_out(out)?;
        *out = c_string(handle(poly, "poly")?.poly.to_string());
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Φ^e(F^e_* h·f)`. A null `h` means `h = 1`.
///
/// # Safety
/// `f` and a non-null `h` must be live handles in the same ring; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cl_cartier_apply(
    e: u32,
    h: *const ClPoly,
    f: *const ClPoly,
    out: *mut *mut ClPoly,
) -> ClStatus {
    guard(|| {
        check_out(out)?;
        let f = handle(f, "f")?;
        let h = if h.is_null() {
            Polynomial::one(f.poly.ring())
        } else {
            handle(h, "h")?.poly.clone()
        };
        let map = CartierMap::new(e, h).map_err(lib_err)?;
        let poly = cartier_apply(&map, &f.poly).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ClPoly { poly }));
        Ok(())
    })
}

/// Test ideal `τ(g^{t_num/t_den})` on the polynomial ring of `g`, written to
/// `out_ideal` as its canonical string. `e_max = 0` keeps the default.
/// `out_stabilized` may be null.
///
/// # Safety
/// `g` must be a live handle; `out_ideal` valid; `out_stabilized` valid or null.
#[no_mangle]
pub unsafe extern "C" fn cl_tau(
    g: *const ClPoly,
    t_num: u64,
    t_den: u64,
    e_max: u32,
    out_ideal: *mut *mut c_char,
    out_stabilized: *mut u32,
) -> ClStatus {
    guard(|| {
        check_out(out_ideal)?;
        let g = handle(g, "g")?;
        let t = RationalExponent::new(t_num, t_den).map_err(lib_err)?;
        let mut opts = TauOptions::default();
        if e_max > 0 {
            opts.e_max = e_max;
        }
        let pair = PrincipalPair::polynomial(g.poly.clone(), t).map_err(lib_err)?;
        let res = tau_polynomial(&pair, &opts).map_err(lib_err)?;
        let ideal = res.ideal.canonical_string(&opts.gb).map_err(lib_err)?;
        *out_ideal = c_string(ideal);
        if let Some(s) = out_stabilized.as_mut() {
            *s = res.stabilized_at_e;
        }
        Ok(())
    })
}

/// Runs a JSON job and returns its JSON report, which carries its own error
/// block. `out_exit_code` (may be null) receives the CLI exit code.
///
/// # Safety
/// `job` must be a nul-terminated string; `out_report` valid;
/// `out_exit_code` valid or null.
#[no_mangle]
pub unsafe extern "C" fn cl_run_job_json(
    job: *const c_char,
    out_report: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> ClStatus {
    guard(|| {
        check_out(out_report)?;
        let report = run_job_text(text(job, "job")?, None);
        *out_report = c_string(report.to_pretty());
        if let Some(code) = out_exit_code.as_mut() {
            *code = report.exit_code;
        }
        Ok(())
    })
}
