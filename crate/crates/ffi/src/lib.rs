//! C interface to `luka-core`.
//!
//! Models are opaque handles made by [`luka_model_new`] and released with
//! [`luka_model_free`]. Every fallible call returns a [`LukaStatus`]; on failure
//! [`luka_last_error`] describes what went wrong on the calling thread.
//! Strings returned through out-pointers belong to the caller and go back
//! through [`luka_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use luka_core::exactalg::rat_from_f64;
use luka_core::paths::{count, partition_polynomial, weight_polynomial_json, Ell, ModelParams, PathError};
use luka_core::phase::{critical_point, free_energy, zc_of_a, PhaseError};

/// Pass as `ell` for an unbounded jump size.
pub const LUKA_ELL_INF: u32 = u32::MAX;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LukaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The model has no transition, or the requested quantity is undefined for it.
    Unsupported = 3,
    /// Enumeration would exceed the path cap.
    ResourceLimit = 4,
    ComputationFailed = 5,
    Panic = 6,
}

/// Opaque model handle.
pub struct LukaModel {
    params: ModelParams,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LukaCriticalPoint {
    pub u_c: f64,
    pub z_c: f64,
    pub a_c: f64,
    /// The three values are exact rationals; the doubles above are their roundings.
    pub exact: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(LukaStatus, String);

impl From<PathError> for Fail {
    fn from(e: PathError) -> Self {
        let status = match e {
            PathError::ResourceLimit { .. } => LukaStatus::ResourceLimit,
            _ => LukaStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<PhaseError> for Fail {
    fn from(e: PhaseError) -> Self {
        let status = match e {
            PhaseError::DegenerateModel(_) | PhaseError::InfiniteEll => LukaStatus::Unsupported,
            PhaseError::DomainError(_) => LukaStatus::InvalidArgument,
            _ => LukaStatus::ComputationFailed,
        };
        Fail(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(LukaStatus::InvalidArgument, msg.into())
}

/// Run `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LukaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LukaStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LukaStatus::Panic
        }
    }
}

unsafe fn model_ref<'a>(m: *const LukaModel) -> Result<&'a LukaModel, Fail> {
    m.as_ref().ok_or_else(|| Fail(LukaStatus::NullPointer, "model handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LukaStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn tolerance(tol: f64) -> Result<num_rational::BigRational, Fail> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    rat_from_f64(tol).ok_or_else(|| invalid("tolerance is not finite"))
}

fn contact_weight(a: f64) -> Result<num_rational::BigRational, Fail> {
    rat_from_f64(a).ok_or_else(|| invalid(format!("contact weight {a} is not finite")))
}

/// Create a `(k, ell)` model. Use [`LUKA_ELL_INF`] for `ell = inf`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn luka_model_new(k: u32, ell: u32, out: *mut *mut LukaModel) -> LukaStatus {
    guard(|| {
        let ell = if ell == LUKA_ELL_INF { Ell::Infinity } else { Ell::Finite(ell) };
        let params = ModelParams::new(k, ell)?;
        write_out(out, Box::into_raw(Box::new(LukaModel { params })))
    })
}

/// # Safety
/// `model` must be null or a handle from [`luka_model_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn luka_model_free(model: *mut LukaModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// `u_c`, `z_c` and `a_c`, certified to within `tol`.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn luka_critical_point(
    model: *const LukaModel,
    tol: f64,
    out: *mut LukaCriticalPoint,
) -> LukaStatus {
    guard(|| {
        let m = model_ref(model)?;
        let cp = critical_point(&m.params, &tolerance(tol)?)?;
        write_out(
            out,
            LukaCriticalPoint { u_c: cp.u_c_f64(), z_c: cp.z_c_f64(), a_c: cp.a_c_f64(), exact: cp.is_exact() },
        )
    })
}

/// Radius of convergence `z_c(a)` for `a >= 1`.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn luka_zc(model: *const LukaModel, a: f64, tol: f64, out: *mut f64) -> LukaStatus {
    guard(|| {
        let m = model_ref(model)?;
        let r = zc_of_a(&m.params, &contact_weight(a)?, &tolerance(tol)?)?;
        write_out(out, r.mid_f64())
    })
}

/// `kappa(a) = -log z_c(a)`.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn luka_free_energy(model: *const LukaModel, a: f64, tol: f64, out: *mut f64) -> LukaStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(out, free_energy(&m.params, &contact_weight(a)?, &tolerance(tol)?)?)
    })
}

/// Number of paths of length `n`.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn luka_count(model: *const LukaModel, n: usize, out: *mut u64) -> LukaStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(out, count(&m.params, n)? as u64)
    })
}

/// Partition polynomial `Z_n(a)` (or `Z_n(a,q)` when `with_area`) as a JSON object
/// mapping `"i,j"` exponent pairs of `a` and `q` to coefficients.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for writing. Release the
/// string with [`luka_string_free`].
#[no_mangle]
pub unsafe extern "C" fn luka_partition_json(
    model: *const LukaModel,
    n: usize,
    with_area: bool,
    out: *mut *mut c_char,
) -> LukaStatus {
    guard(|| {
        let m = model_ref(model)?;
        let z = partition_polynomial(&m.params, n, with_area)?;
        let s = CString::new(weight_polynomial_json(&z).to_string()).expect("JSON has no nul");
        write_out(out, s.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn luka_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn luka_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn luka_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(c) => c,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_handles_are_reported() {
        let mut out = 0.0;
        let st = unsafe { luka_zc(ptr::null(), 2.0, 1e-12, &mut out) };
        assert_eq!(st, LukaStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(luka_last_error()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }

    #[test]
    fn success_clears_error() {
        let mut m = ptr::null_mut();
        assert_eq!(unsafe { luka_model_new(3, 1, &mut m) }, LukaStatus::InvalidArgument);
        assert!(!luka_last_error().is_null());
        assert_eq!(unsafe { luka_model_new(1, 1, &mut m) }, LukaStatus::Ok);
        assert!(luka_last_error().is_null());
        unsafe { luka_model_free(m) };
    }
}
