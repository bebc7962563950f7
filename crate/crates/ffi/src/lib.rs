//! C ABI over `realform`.
//!
//! Handles are opaque and owned by the caller; free them with the matching
//! `*_free`. Every fallible call returns an [`RfStatus`] and leaves a message
//! readable through [`rf_last_error`] on the same thread. Rationals cross the
//! boundary as parallel `int64_t` numerator and denominator arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use realform::error::Error;
use realform::nilpotent::{apply_preset, bch_multiply, extract_n, GroupElement, NilpotentAlgebra};
use realform::rational::BigRational;
use realform::real_algebra::{verify_jacobi, RealForm};
use realform::satake::parse_diagram;

/// Result codes; `RF_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownForm = 3,
    InvalidArgument = 4,
    InconsistentDiagram = 5,
    Parse = 6,
    DimensionMismatch = 7,
    Overflow = 8,
    VerificationFailed = 9,
    Internal = 10,
}

/// A real form with its structure table in the basis B.
pub struct RfForm {
    inner: RealForm,
}

/// The nilradical n of an Iwasawa decomposition, raw or normalized.
pub struct RfNilpotent {
    inner: NilpotentAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: RfStatus, msg: impl Into<String>) -> RfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> RfStatus {
    let status = match &e {
        Error::UnknownForm { .. } => RfStatus::UnknownForm,
        Error::InvalidType(_) | Error::Domain(_) => RfStatus::InvalidArgument,
        Error::InconsistentSatake(_) => RfStatus::InconsistentDiagram,
        Error::Parse(_) => RfStatus::Parse,
        Error::Dimension { .. } => RfStatus::DimensionMismatch,
        Error::Invariant(_) => RfStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f` with panics mapped to `RfStatus::Internal`.
fn guard(f: impl FnOnce() -> Result<(), RfStatus>) -> RfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(RfStatus::Internal, "panic inside realform"),
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, RfStatus> {
    if s.is_null() {
        return Err(fail(RfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(RfStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, RfStatus> {
    p.as_ref().ok_or_else(|| fail(RfStatus::NullPointer, "null handle"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, RfStatus> {
    p.as_mut().ok_or_else(|| fail(RfStatus::NullPointer, "null output pointer"))
}

fn owned_string(s: String) -> Result<*mut c_char, RfStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| fail(RfStatus::Internal, "output contains NUL"))
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn rf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a catalog form. `n` is the family parameter; pass 0 for fixed forms such as `FII`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_form_from_catalog(name: *const c_char, n: u32, result: *mut *mut RfForm) -> RfStatus {
    guard(|| {
        let name = text(name)?;
        let slot = out(result)?;
        let n = (n > 0).then_some(n as usize);
        let inner = RealForm::from_catalog(name, n).map_err(from_error)?;
        *slot = Box::into_raw(Box::new(RfForm { inner }));
        Ok(())
    })
}

/// Builds a form from diagram text such as `type=C rank=3; shaded=0,2; arrows=;`.
///
/// # Safety
/// `diagram` must be a NUL-terminated string and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_form_from_diagram(diagram: *const c_char, result: *mut *mut RfForm) -> RfStatus {
    guard(|| {
        let diagram = parse_diagram(text(diagram)?).map_err(from_error)?;
        let slot = out(result)?;
        let inner = RealForm::build(&diagram).map_err(from_error)?;
        *slot = Box::into_raw(Box::new(RfForm { inner }));
        Ok(())
    })
}

/// # Safety
/// `form` must come from `rf_form_from_*` and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rf_form_free(form: *mut RfForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_form_dim(form: *const RfForm, dim: *mut usize) -> RfStatus {
    guard(|| {
        *out(dim)? = handle(form)?.inner.dim();
        Ok(())
    })
}

/// # Safety
/// `form` must be a live handle and `rank` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_form_real_rank(form: *const RfForm, rank: *mut usize) -> RfStatus {
    guard(|| {
        *out(rank)? = handle(form)?.inner.ctx.real_rank();
        Ok(())
    })
}

/// Structure table as JSON; release the string with `rf_string_free`.
///
/// # Safety
/// `form` must be a live handle and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_form_table_json(form: *const RfForm, json: *mut *mut c_char) -> RfStatus {
    guard(|| {
        let form = handle(form)?;
        let slot = out(json)?;
        let body = serde_json::to_string_pretty(&form.inner.table.to_json()).map_err(|e| fail(RfStatus::Internal, e.to_string()))?;
        *slot = owned_string(body)?;
        Ok(())
    })
}

/// Checks the Jacobi identity on every basis triple; `RF_STATUS_VERIFICATION_FAILED` on a violation.
///
/// # Safety
/// `form` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rf_form_verify_jacobi(form: *const RfForm) -> RfStatus {
    guard(|| {
        verify_jacobi(&handle(form)?.inner.table).map(|_| ()).map_err(|e| fail(RfStatus::VerificationFailed, e))
    })
}

/// Extracts n. With `normalized` nonzero the named-root normalization is applied
/// where one exists; other forms fall back to the raw basis.
///
/// # Safety
/// `form` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_from_form(form: *const RfForm, normalized: i32, result: *mut *mut RfNilpotent) -> RfStatus {
    guard(|| {
        let form = &handle(form)?.inner;
        let slot = out(result)?;
        let raw = extract_n(form).map_err(from_error)?;
        let inner = if normalized != 0 {
            match apply_preset(form, &raw).map_err(from_error)? {
                Some(p) => p.algebra,
                None => raw,
            }
        } else {
            raw
        };
        *slot = Box::into_raw(Box::new(RfNilpotent { inner }));
        Ok(())
    })
}

/// # Safety
/// `algebra` must come from `rf_nilpotent_from_form` and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_free(algebra: *mut RfNilpotent) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// # Safety
/// `algebra` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_dim(algebra: *const RfNilpotent, dim: *mut usize) -> RfStatus {
    guard(|| {
        *out(dim)? = handle(algebra)?.inner.dim();
        Ok(())
    })
}

/// Nilpotency class; 0 for the zero algebra.
///
/// # Safety
/// `algebra` must be a live handle and `class` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_class(algebra: *const RfNilpotent, class: *mut usize) -> RfStatus {
    guard(|| {
        *out(class)? = handle(algebra)?.inner.class;
        Ok(())
    })
}

/// # Safety
/// `algebra` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_center_dim(algebra: *const RfNilpotent, dim: *mut usize) -> RfStatus {
    guard(|| {
        *out(dim)? = handle(algebra)?.inner.center_basis.len();
        Ok(())
    })
}

unsafe fn read_point(num: *const i64, den: *const i64, len: usize) -> Result<GroupElement, RfStatus> {
    if len > 0 && (num.is_null() || den.is_null()) {
        return Err(fail(RfStatus::NullPointer, "null coordinate array"));
    }
    let (num, den) = if len == 0 { (&[][..], &[][..]) } else { (std::slice::from_raw_parts(num, len), std::slice::from_raw_parts(den, len)) };
    let log_coordinates = num
        .iter()
        .zip(den)
        .map(|(&p, &q)| match q {
            0 => Err(fail(RfStatus::InvalidArgument, "zero denominator")),
            _ => Ok(BigRational::new(BigInt::from(p), BigInt::from(q))),
        })
        .collect::<Result<_, _>>()?;
    Ok(GroupElement { log_coordinates })
}

/// Group product `x · y` in exponential coordinates, all arrays of length `len`.
/// `RF_STATUS_OVERFLOW` when a result coordinate does not fit in `int64_t`.
///
/// # Safety
/// Each array pointer must reference `len` readable (inputs) or writable (outputs) values.
#[no_mangle]
pub unsafe extern "C" fn rf_nilpotent_multiply(
    algebra: *const RfNilpotent,
    x_num: *const i64,
    x_den: *const i64,
    y_num: *const i64,
    y_den: *const i64,
    len: usize,
    out_num: *mut i64,
    out_den: *mut i64,
) -> RfStatus {
    guard(|| {
        let algebra = &handle(algebra)?.inner;
        let x = read_point(x_num, x_den, len)?;
        let y = read_point(y_num, y_den, len)?;
        let z = bch_multiply(algebra, &x, &y).map_err(from_error)?;
        let mut parts = Vec::with_capacity(len);
        for c in &z.log_coordinates {
            match (c.numer().to_i64(), c.denom().to_i64()) {
                (Some(p), Some(q)) => parts.push((p, q)),
                _ => return Err(fail(RfStatus::Overflow, format!("coordinate {c} exceeds int64"))),
            }
        }
        if len > 0 && (out_num.is_null() || out_den.is_null()) {
            return Err(fail(RfStatus::NullPointer, "null output array"));
        }
        for (i, (p, q)) in parts.into_iter().enumerate() {
            *out_num.add(i) = p;
            *out_den.add(i) = q;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
