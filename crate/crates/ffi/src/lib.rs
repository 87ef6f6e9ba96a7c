//! C interface to the `leibniz` crate.
//!
//! Algebras are opaque `LzAlgebra` handles released with `lz_algebra_free`.
//! Every fallible function returns an `LzStatus` and writes its result
//! through an out pointer; on failure `lz_last_error_message` describes the
//! most recent error on the calling thread. Strings returned by the library
//! are released with `lz_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use leibniz::algebra::LeibnizAlgebra;
use leibniz::linalg::{parse_rational, Rational};
use leibniz::{format, report, simple, sl2, structure, Error};

/// Opaque algebra handle.
pub struct LzAlgebra {
    inner: LeibnizAlgebra,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    IoError = 5,
    /// A mathematical check failed (for example an identity violation).
    MathFailure = 6,
    /// Undecidable, or eigenvalues outside the rationals.
    Undecidable = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> LzStatus {
    match e {
        Error::Parse { .. } => LzStatus::ParseError,
        Error::Io(_) => LzStatus::IoError,
        Error::Validation(_) | Error::BadParity(_) | Error::BadRange(_) => LzStatus::ValidationError,
        Error::Undecidable(_) | Error::SplittingFailure(_) => LzStatus::Undecidable,
        _ => LzStatus::MathFailure,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), LzStatus>) -> LzStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LzStatus::Panic
        }
    }
}

fn fail(e: Error) -> LzStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, LzStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(LzStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        LzStatus::InvalidUtf8
    })
}

unsafe fn alg_arg<'a>(p: *const LzAlgebra) -> Result<&'a LeibnizAlgebra, LzStatus> {
    if p.is_null() {
        set_error("null algebra handle");
        return Err(LzStatus::NullPointer);
    }
    Ok(&(*p).inner)
}

unsafe fn rational_arg(p: *const c_char) -> Result<Rational, LzStatus> {
    parse_rational(str_arg(p)?).map_err(fail)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), LzStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(LzStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn write_algebra(out: *mut *mut LzAlgebra, l: LeibnizAlgebra) -> Result<(), LzStatus> {
    let boxed = Box::into_raw(Box::new(LzAlgebra { inner: l }));
    if out.is_null() {
        drop(Box::from_raw(boxed));
        set_error("null output pointer");
        return Err(LzStatus::NullPointer);
    }
    out.write(boxed);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), LzStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        LzStatus::Panic
    })?;
    write_out(out, c.into_raw())
}

/// Message of the last error on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn lz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_from_json(json: *const c_char, out: *mut *mut LzAlgebra) -> LzStatus {
    guard(|| {
        let l = format::from_json(str_arg(json)?).map_err(fail)?;
        write_algebra(out, l)
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_load(path: *const c_char, out: *mut *mut LzAlgebra) -> LzStatus {
    guard(|| {
        let l = format::load(str_arg(path)?).map_err(fail)?;
        write_algebra(out, l)
    })
}

/// Rationals are strings such as `"3"` or `"-1/2"`.
///
/// # Safety
/// `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_construct_sl22(
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut LzAlgebra,
) -> LzStatus {
    guard(|| {
        let l = sl2::construct_sl22(&rational_arg(alpha)?, &rational_arg(beta)?);
        write_algebra(out, l)
    })
}

/// # Safety
/// `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_construct_sl2n(
    n: i64,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut LzAlgebra,
) -> LzStatus {
    guard(|| {
        let l = sl2::construct_sl2n(n, &rational_arg(alpha)?, &rational_arg(beta)?).map_err(fail)?;
        write_algebra(out, l)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_construct_standard(n: i64, out: *mut *mut LzAlgebra) -> LzStatus {
    guard(|| {
        if n < 1 {
            return Err(fail(Error::BadRange(format!("n must be at least 1, got {n}"))));
        }
        let l = sl2::construct_standard(n as usize).map_err(fail)?;
        write_algebra(out, l)
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_dim(alg: *const LzAlgebra, out: *mut usize) -> LzStatus {
    guard(|| write_out(out, alg_arg(alg)?.dim()))
}

/// Canonical JSON file text; release with `lz_string_free`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_to_json(alg: *const LzAlgebra, out: *mut *mut c_char) -> LzStatus {
    guard(|| write_string(out, format::to_json(alg_arg(alg)?)))
}

/// Writes whether the Leibniz identity holds on all basis triples.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_verify_leibniz(alg: *const LzAlgebra, out: *mut bool) -> LzStatus {
    guard(|| write_out(out, alg_arg(alg)?.verify_leibniz()))
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_annihilator_dim(alg: *const LzAlgebra, out: *mut usize) -> LzStatus {
    guard(|| {
        let ann = structure::annihilator(alg_arg(alg)?).map_err(fail)?;
        write_out(out, ann.dim())
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_is_simple(alg: *const LzAlgebra, out: *mut bool) -> LzStatus {
    guard(|| {
        let simple = simple::is_simple(alg_arg(alg)?).map_err(fail)?;
        write_out(out, simple)
    })
}

/// Classification payload as JSON (the `result` object of the command-line
/// report); release with `lz_string_free`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_classify_json(alg: *const LzAlgebra, out: *mut *mut c_char) -> LzStatus {
    guard(|| {
        let l = alg_arg(alg)?;
        let r = sl2::classify(l).map_err(fail)?;
        write_string(out, report::classification(l, &r).to_string())
    })
}

/// Root data for a Cartan subalgebra found with `seed`, as JSON; release
/// with `lz_string_free`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_roots_json(alg: *const LzAlgebra, seed: u64, out: *mut *mut c_char) -> LzStatus {
    guard(|| {
        let value = report::roots(alg_arg(alg)?, None, seed).map_err(fail)?;
        write_string(out, value.to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `alg` must come from this library and not be freed twice; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_free(alg: *mut LzAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}
