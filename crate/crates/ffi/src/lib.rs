//! C ABI over `cyclomul`.
//!
//! Objects are opaque heap handles created by `*_new` and released by the
//! matching `*_free`. Every fallible call returns a [`CmStatus`]; on failure
//! a description is available from [`cm_last_error`] on the same thread.
//! No function unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclomul::algo::MultiplierId;
use cyclomul::complexity::{expected_counts, row};
use cyclomul::gauss::{GaussParams, NormalBasisElement};
use cyclomul::oracle::verify_normal_basis;
use cyclomul::{CycloElement, Error, GroundField, OpCount};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmStatus {
    Ok = 0,
    NullPointer = 1,
    NotPrime = 2,
    CoordOutOfRange = 3,
    DimensionMismatch = 4,
    OddDimensionRequired = 5,
    WrongBasisType = 6,
    InvalidParams = 7,
    UnknownName = 8,
    Unsupported = 9,
    OracleUnavailable = 10,
    BufferTooSmall = 11,
    Internal = 12,
}

/// Operation tallies of one multiplication.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CmOpCount {
    pub mult: u64,
    pub doub: u64,
    pub add: u64,
}

impl From<OpCount> for CmOpCount {
    fn from(c: OpCount) -> Self {
        CmOpCount {
            mult: c.mult,
            doub: c.doub,
            add: c.add,
        }
    }
}

/// An element of `GF(p)[x]/(x^n - 1)`.
pub struct CmElement(CycloElement);

/// Validated Gauss period parameters.
pub struct CmOnbParams(GaussParams);

/// A normal-basis element of GF(q^m).
pub struct CmOnbElement(NormalBasisElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CmStatus {
    match e {
        Error::NotPrime(_) | Error::CharacteristicTooLarge(_) => CmStatus::NotPrime,
        Error::CoordOutOfRange { .. } => CmStatus::CoordOutOfRange,
        Error::DimensionTooSmall(_) | Error::DimensionMismatch { .. } | Error::NotFoldable { .. } => {
            CmStatus::DimensionMismatch
        }
        Error::OddDimensionRequired(_) => CmStatus::OddDimensionRequired,
        Error::WrongBasisType { .. } => CmStatus::WrongBasisType,
        Error::InvalidGaussParams { .. } | Error::NoSuchElement { .. } => CmStatus::InvalidParams,
        Error::Parse(_) => CmStatus::UnknownName,
        Error::OracleUnavailable { .. } => CmStatus::OracleUnavailable,
        _ => CmStatus::Unsupported,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), CmStatus>) -> CmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            CmStatus::Internal
        }
    }
}

fn fail(e: Error) -> CmStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null() -> CmStatus {
    set_error("null pointer argument");
    CmStatus::NullPointer
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, CmStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn slice<'a>(values: *const u32, len: usize) -> Result<&'a [u32], CmStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if values.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(values, len))
}

unsafe fn name<'a>(s: *const c_char) -> Result<&'a str, CmStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("name is not valid UTF-8");
        CmStatus::UnknownName
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), CmStatus> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn copy_out(src: &[u32], out: *mut u32, capacity: usize) -> Result<(), CmStatus> {
    if capacity < src.len() {
        set_error(format!("buffer holds {capacity} values, {} needed", src.len()));
        return Err(CmStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    }
    Ok(())
}

fn widen(values: &[u32]) -> Vec<u64> {
    values.iter().map(|&v| v as u64).collect()
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cm_status_message(status: CmStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CmStatus::Ok => c"ok",
        CmStatus::NullPointer => c"null pointer argument",
        CmStatus::NotPrime => c"characteristic is not a supported prime",
        CmStatus::CoordOutOfRange => c"coordinate out of range",
        CmStatus::DimensionMismatch => c"dimension mismatch",
        CmStatus::OddDimensionRequired => c"odd dimension required",
        CmStatus::WrongBasisType => c"wrong normal basis type",
        CmStatus::InvalidParams => c"invalid Gauss period parameters",
        CmStatus::UnknownName => c"unknown algorithm or row name",
        CmStatus::Unsupported => c"unsupported combination",
        CmStatus::OracleUnavailable => c"splitting field too large",
        CmStatus::BufferTooSmall => c"output buffer too small",
        CmStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates an element of `GF(p)[x]/(x^n - 1)` from `n` coordinates.
///
/// # Safety
/// `values` must point to `n` readable integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_element_new(
    p: u32,
    values: *const u32,
    n: usize,
    out: *mut *mut CmElement,
) -> CmStatus {
    guard(|| {
        let values = slice(values, n)?;
        let field = GroundField::new(p).map_err(fail)?;
        let e = CycloElement::from_values(field, &widen(values)).map_err(fail)?;
        put(out, CmElement(e))
    })
}

/// Releases an element; NULL is ignored.
///
/// # Safety
/// `e` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cm_element_free(e: *mut CmElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of coordinates, 0 for NULL.
///
/// # Safety
/// `e` must be NULL or a live element.
#[no_mangle]
pub unsafe extern "C" fn cm_element_len(e: *const CmElement) -> usize {
    e.as_ref().map_or(0, |e| e.0.n())
}

/// Copies the coordinates into `out`, which holds `capacity` values.
///
/// # Safety
/// `e` must be a live element and `out` writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn cm_element_coords(e: *const CmElement, out: *mut u32, capacity: usize) -> CmStatus {
    guard(|| copy_out(&as_ref(e)?.0.values(), out, capacity))
}

/// Multiplies with the named algorithm (`"direct"`, `"alg1"`, ...). When
/// `counts` is not NULL it receives the operation tallies.
///
/// # Safety
/// Pointers must be valid; `counts` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cm_multiply(
    algo: *const c_char,
    a: *const CmElement,
    b: *const CmElement,
    out: *mut *mut CmElement,
    counts: *mut CmOpCount,
) -> CmStatus {
    guard(|| {
        let id: MultiplierId = name(algo)?.parse().map_err(fail)?;
        let (a, b) = (as_ref(a)?, as_ref(b)?);
        let mut ctx = OpCount::new();
        let product = id.mul_cyclo(&a.0, &b.0, &mut ctx).map_err(fail)?.product;
        if let Some(c) = counts.as_mut() {
            *c = ctx.into();
        }
        put(out, CmElement(product))
    })
}

/// Validates Gauss period parameters of type `k` for GF(q^m).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_params_new(m: u32, k: u32, q: u32, out: *mut *mut CmOnbParams) -> CmStatus {
    guard(|| {
        let params = GaussParams::new(m, k, q).map_err(fail)?;
        put(out, CmOnbParams(params))
    })
}

/// Releases parameters; NULL is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_params_free(p: *mut CmOnbParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The cyclotomic dimension `n = mk + 1`, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_params_n(p: *const CmOnbParams) -> u32 {
    p.as_ref().map_or(0, |p| p.0.n())
}

/// Creates a normal-basis element from `len == m` coordinates.
///
/// # Safety
/// `params` must be live, `values` readable for `len` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_element_new(
    params: *const CmOnbParams,
    values: *const u32,
    len: usize,
    out: *mut *mut CmOnbElement,
) -> CmStatus {
    guard(|| {
        let params = as_ref(params)?.0;
        let values = slice(values, len)?;
        let e = NormalBasisElement::from_values(params, &widen(values)).map_err(fail)?;
        put(out, CmOnbElement(e))
    })
}

/// Releases a normal-basis element; NULL is ignored.
///
/// # Safety
/// `e` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_element_free(e: *mut CmOnbElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of coordinates, 0 for NULL.
///
/// # Safety
/// `e` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_element_len(e: *const CmOnbElement) -> usize {
    e.as_ref().map_or(0, |e| e.0.coords().len())
}

/// Copies the coordinates into `out`, which holds `capacity` values.
///
/// # Safety
/// `e` must be live and `out` writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_element_coords(
    e: *const CmOnbElement,
    out: *mut u32,
    capacity: usize,
) -> CmStatus {
    guard(|| copy_out(&as_ref(e)?.0.values(), out, capacity))
}

/// Multiplies normal-basis elements with the named algorithm
/// (`"onb1-eq24"`, `"onb2-simpli"`, ...).
///
/// # Safety
/// Pointers must be valid; `counts` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn cm_onb_multiply(
    algo: *const c_char,
    a: *const CmOnbElement,
    b: *const CmOnbElement,
    out: *mut *mut CmOnbElement,
    counts: *mut CmOpCount,
) -> CmStatus {
    guard(|| {
        let id: MultiplierId = name(algo)?.parse().map_err(fail)?;
        let (a, b) = (as_ref(a)?, as_ref(b)?);
        let mut ctx = OpCount::new();
        let product = id.mul_onb(&a.0, &b.0, &mut ctx).map_err(fail)?;
        if let Some(c) = counts.as_mut() {
            *c = ctx.into();
        }
        put(out, CmOnbElement(product))
    })
}

/// Whether the type-(m, k) Gauss period generates a normal basis of GF(q^m).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_verify_normal_basis(m: u32, k: u32, q: u32, out: *mut bool) -> CmStatus {
    guard(|| {
        let ok = verify_normal_basis(m, k, q).map_err(fail)?;
        if out.is_null() {
            return Err(null());
        }
        *out = ok;
        Ok(())
    })
}

/// Closed-form counts of a table row (for example `"direct"`) at size `x >= 2`.
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cm_expected_counts(label: *const c_char, x: u64, out: *mut CmOpCount) -> CmStatus {
    guard(|| {
        let label = name(label)?;
        let r = row(label).ok_or_else(|| {
            set_error(format!("unknown row '{label}'"));
            CmStatus::UnknownName
        })?;
        if x < 2 {
            return Err(fail(Error::DimensionTooSmall(x as usize)));
        }
        if out.is_null() {
            return Err(null());
        }
        *out = expected_counts(r, x).into();
        Ok(())
    })
}
