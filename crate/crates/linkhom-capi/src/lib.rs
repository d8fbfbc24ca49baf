//! C ABI for the linkhom library: opaque handles, status codes, and
//! JSON/string outputs so other languages can bind without knowing the
//! internal types. The header `include/linkhom.h` is generated by cbindgen
//! at build time.
//!
//! Ownership rules: every pointer returned by this library is owned by the
//! caller and must be released with the matching `*_free` function. Input
//! strings are borrowed NUL-terminated UTF-8.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use linkhom::betti::{p3_closed, p5_closed, pair_poincare};
use linkhom::euler::{chi_m4, chi_m6};
use linkhom::lengths::LengthVector;
use linkhom::oracle::{run_suite, Scope};
use linkhom::render;
use linkhom::Error;

/// Status codes returned by fallible entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkhomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NonGeneric = 4,
    EmptyModuli = 5,
    OutOfRange = 6,
    ComputeError = 7,
}

fn status_of(err: &Error) -> LinkhomStatus {
    match err {
        Error::Parse { .. } | Error::Invalid(_) => LinkhomStatus::ParseError,
        Error::NonGeneric { .. } => LinkhomStatus::NonGeneric,
        Error::EmptyModuli => LinkhomStatus::EmptyModuli,
        Error::OutOfRange { .. } | Error::TooShort { .. } | Error::UnsupportedDimension { .. } => {
            LinkhomStatus::OutOfRange
        }
        _ => LinkhomStatus::ComputeError,
    }
}

/// Opaque analysis result; query it with the accessor functions and release
/// it with `linkhom_analysis_free`.
pub struct LinkhomAnalysis {
    n: usize,
    generic: bool,
    empty_moduli: bool,
    a: Vec<u64>,
    p3: String,
    p5: Option<String>,
    chi4: Option<i64>,
    chi6: Option<i64>,
}

fn parse_arg(ell: *const c_char) -> Result<LengthVector, LinkhomStatus> {
    if ell.is_null() {
        return Err(LinkhomStatus::NullPointer);
    }
    // SAFETY: caller passes a NUL-terminated string per the contract above.
    let raw = unsafe { CStr::from_ptr(ell) };
    let text = raw.to_str().map_err(|_| LinkhomStatus::InvalidUtf8)?;
    LengthVector::parse(text).map_err(|e| status_of(&e))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Analyzes a length vector given as comma-separated rationals. On success
/// writes a fresh handle into `out` and returns `Ok`; on failure leaves
/// `out` untouched.
///
/// # Safety
/// `ell` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analyze(
    ell: *const c_char,
    out: *mut *mut LinkhomAnalysis,
) -> LinkhomStatus {
    if out.is_null() {
        return LinkhomStatus::NullPointer;
    }
    let l = match parse_arg(ell) {
        Ok(l) => l,
        Err(status) => return status,
    };
    let generic = l.is_generic();
    let mut analysis = LinkhomAnalysis {
        n: l.n(),
        generic,
        empty_moduli: false,
        a: Vec::new(),
        p3: String::new(),
        p5: None,
        chi4: None,
        chi6: None,
    };
    if generic {
        let stats = l.short_set_stats().expect("generic");
        analysis.empty_moduli = !stats.a0_nonempty;
        analysis.a = stats.a.clone();
        analysis.p3 = render::plain(&p3_closed(&l).expect("generic"));
        if stats.a0_nonempty {
            if let Ok(p5) = p5_closed(&l) {
                analysis.p5 = Some(render::plain(&p5));
            }
            if let Ok(chi) = chi_m4(&l) {
                analysis.chi4 = i64::try_from(chi).ok();
            }
            if let Ok(chi) = chi_m6(&l) {
                analysis.chi6 = i64::try_from(chi).ok();
            }
        }
    }
    unsafe { *out = Box::into_raw(Box::new(analysis)) };
    LinkhomStatus::Ok
}

/// Releases an analysis handle. Null is a no-op.
///
/// # Safety
/// `analysis` must come from `linkhom_analyze` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_free(analysis: *mut LinkhomAnalysis) {
    if !analysis.is_null() {
        drop(unsafe { Box::from_raw(analysis) });
    }
}

/// Number of entries of the analyzed vector.
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_n(analysis: *const LinkhomAnalysis) -> usize {
    unsafe { &*analysis }.n
}

/// 1 if the vector is generic (no median subset), else 0.
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_is_generic(analysis: *const LinkhomAnalysis) -> i32 {
    i32::from(unsafe { &*analysis }.generic)
}

/// 1 if the moduli space is empty (`a_0 = 0`), else 0.
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_is_empty(analysis: *const LinkhomAnalysis) -> i32 {
    i32::from(unsafe { &*analysis }.empty_moduli)
}

/// Short-set count `a_k`, or 0 when out of range or not generic.
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_a(analysis: *const LinkhomAnalysis, k: usize) -> u64 {
    unsafe { &*analysis }.a.get(k).copied().unwrap_or(0)
}

/// Poincaré polynomial of `M_3(l)` in plain text; caller frees with
/// `linkhom_string_free`. Null when the vector is not generic.
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_p3(analysis: *const LinkhomAnalysis) -> *mut c_char {
    let a = unsafe { &*analysis };
    if !a.generic {
        return ptr::null_mut();
    }
    to_c_string(a.p3.clone())
}

/// Poincaré polynomial of `M_5(l)` in plain text, or null when undefined
/// (not generic, empty moduli, or n < 5).
///
/// # Safety
/// `analysis` must be a live handle from `linkhom_analyze`.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_p5(analysis: *const LinkhomAnalysis) -> *mut c_char {
    match &unsafe { &*analysis }.p5 {
        Some(p) => to_c_string(p.clone()),
        None => ptr::null_mut(),
    }
}

/// Euler characteristic of `M_4(l)` through `out`; `Ok` only when defined.
///
/// # Safety
/// `analysis` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_chi_m4(
    analysis: *const LinkhomAnalysis,
    out: *mut i64,
) -> LinkhomStatus {
    match unsafe { &*analysis }.chi4 {
        Some(v) => {
            unsafe { *out = v };
            LinkhomStatus::Ok
        }
        None => LinkhomStatus::OutOfRange,
    }
}

/// Euler characteristic of `M_6(l)` through `out`; `Ok` only when defined.
///
/// # Safety
/// `analysis` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn linkhom_analysis_chi_m6(
    analysis: *const LinkhomAnalysis,
    out: *mut i64,
) -> LinkhomStatus {
    match unsafe { &*analysis }.chi6 {
        Some(v) => {
            unsafe { *out = v };
            LinkhomStatus::Ok
        }
        None => LinkhomStatus::OutOfRange,
    }
}

/// Plain-text Poincaré polynomial of the pair `(X^k_d, dX^k_d)`; caller
/// frees with `linkhom_string_free`. Null for `d < 4` or `k < 0`.
#[no_mangle]
pub extern "C" fn linkhom_pair_poincare(d: i64, k: i64) -> *mut c_char {
    if d < 4 || k < 0 {
        return ptr::null_mut();
    }
    to_c_string(render::plain(&pair_poincare(d, k)))
}

/// Runs one scope of the verification suite ("all", "p3", "p5", "pair",
/// "chi", "generators"); returns the number of failing checks, or -1 for an
/// unknown scope.
///
/// # Safety
/// `scope` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn linkhom_verify(scope: *const c_char, seed: u64) -> i64 {
    if scope.is_null() {
        return -1;
    }
    let raw = unsafe { CStr::from_ptr(scope) };
    let scope = match raw.to_str() {
        Ok("all") => Scope::All,
        Ok("p3") => Scope::P3,
        Ok("p5") => Scope::P5,
        Ok("pair") => Scope::Pair,
        Ok("chi") => Scope::Chi,
        Ok("generators") => Scope::Generators,
        _ => return -1,
    };
    run_suite(scope, seed)
        .iter()
        .filter(|r| !r.pass)
        .count() as i64
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from a `linkhom_*` function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn linkhom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn analyze(ell: &str) -> *mut LinkhomAnalysis {
        let c = CString::new(ell).unwrap();
        let mut handle: *mut LinkhomAnalysis = ptr::null_mut();
        let status = unsafe { linkhom_analyze(c.as_ptr(), &mut handle) };
        assert_eq!(status, LinkhomStatus::Ok);
        handle
    }

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { linkhom_string_free(p) };
        s
    }

    #[test]
    fn analyze_roundtrip() {
        let handle = analyze("1,1,1,1,1,4");
        unsafe {
            assert_eq!(linkhom_analysis_n(handle), 6);
            assert_eq!(linkhom_analysis_is_generic(handle), 1);
            assert_eq!(linkhom_analysis_is_empty(handle), 0);
            assert_eq!(linkhom_analysis_a(handle, 0), 1);
            assert_eq!(linkhom_analysis_a(handle, 1), 0);
            assert_eq!(take_string(linkhom_analysis_p3(handle)), "1 + t^2 + t^4 + t^6");
            assert_eq!(take_string(linkhom_analysis_p5(handle)), "1 + t^9");
            let mut chi = 0i64;
            assert_eq!(linkhom_analysis_chi_m4(handle, &mut chi), LinkhomStatus::Ok);
            assert_eq!(chi, 2);
            assert_eq!(
                linkhom_analysis_chi_m6(handle, &mut chi),
                LinkhomStatus::OutOfRange
            );
            linkhom_analysis_free(handle);
        }
    }

    #[test]
    fn analyze_nongeneric() {
        let handle = analyze("1,1,1,1");
        unsafe {
            assert_eq!(linkhom_analysis_is_generic(handle), 0);
            assert!(linkhom_analysis_p3(handle).is_null());
            linkhom_analysis_free(handle);
        }
    }

    #[test]
    fn status_codes() {
        let mut handle: *mut LinkhomAnalysis = ptr::null_mut();
        let bad = CString::new("1,x,3").unwrap();
        assert_eq!(
            unsafe { linkhom_analyze(bad.as_ptr(), &mut handle) },
            LinkhomStatus::ParseError
        );
        assert_eq!(
            unsafe { linkhom_analyze(ptr::null(), &mut handle) },
            LinkhomStatus::NullPointer
        );
    }

    #[test]
    fn pair_string() {
        let p = linkhom_pair_poincare(5, 3);
        assert_eq!(take_string(p), "t^9");
        assert!(linkhom_pair_poincare(3, 3).is_null());
    }

    #[test]
    fn verify_generators_scope() {
        let scope = CString::new("generators").unwrap();
        assert_eq!(unsafe { linkhom_verify(scope.as_ptr(), 7) }, 0);
        let bad = CString::new("nope").unwrap();
        assert_eq!(unsafe { linkhom_verify(bad.as_ptr(), 7) }, -1);
    }
}
