//! C interface to `frl-core`.
//!
//! Every fallible function returns an [`FrlStatus`] and writes its result
//! through an out-pointer. After a non-`FRL_STATUS_OK` return the message is
//! available from [`frl_last_error_message`] on the same thread. Expansions are
//! exposed as the opaque [`FrlEigenFunction`] handle, released with
//! [`frl_eigen_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use frl_core::eigenfunction::{root_certificate, EigenPlusFunction, DEFAULT_GRID_STEP};
use frl_core::specfun::bessel::{bessel_j, BesselOrder};
use frl_core::specfun::gamma::gamma;
use frl_core::specfun::hermite::hermite_weighted;
use frl_core::{higherdim, lowerbound, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrlStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Accuracy = 3,
    NegativeAtInfinity = 4,
    Internal = 5,
    Panic = 6,
}

/// An eigenfunction expansion `Σ α_n H_{4n}(x) e^{-πx²}`.
pub struct FrlEigenFunction {
    inner: EigenPlusFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> FrlStatus {
    match e {
        Error::Domain(_) => FrlStatus::Domain,
        Error::Accuracy { .. } => FrlStatus::Accuracy,
        Error::NegativeAtInfinity { .. } => FrlStatus::NegativeAtInfinity,
        Error::Internal(_) => FrlStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FrlStatus, String)>) -> FrlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FrlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside frl".into());
            FrlStatus::Panic
        }
    }
}

fn lift<T>(r: frl_core::Result<T>) -> Result<T, (FrlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), (FrlStatus, String)> {
    if out.is_null() {
        return Err((FrlStatus::NullPointer, "output pointer is null".into()));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn scalar(out: *mut f64, f: impl FnOnce() -> frl_core::Result<f64>) -> FrlStatus {
    guard(|| {
        if out.is_null() {
            return Err((FrlStatus::NullPointer, "output pointer is null".into()));
        }
        let v = lift(f())?;
        write_out(out, v)
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn frl_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn frl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// `Γ(x)`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_gamma(x: f64, out: *mut f64) -> FrlStatus {
    scalar(out, || gamma(x))
}

/// `J_ν(x)` for `ν ≥ −1/2`, `x ≥ 0`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_bessel_j(nu: f64, x: f64, out: *mut f64) -> FrlStatus {
    scalar(out, || bessel_j(BesselOrder::new(nu)?, x))
}

/// `H_n(x) e^{-x²/2}` as `mantissa · 2^exponent`.
///
/// # Safety
/// `mantissa` and `exponent` must be null or valid pointers.
#[no_mangle]
pub unsafe extern "C" fn frl_hermite_weighted(n: u64, x: f64, mantissa: *mut f64, exponent: *mut i64) -> FrlStatus {
    guard(|| {
        if mantissa.is_null() || exponent.is_null() {
            return Err((FrlStatus::NullPointer, "output pointer is null".into()));
        }
        if !x.is_finite() {
            return Err((FrlStatus::Domain, format!("domain error: x must be finite, got {x}")));
        }
        let v = hermite_weighted(n, x);
        write_out(mantissa, v.mantissa())?;
        write_out(exponent, v.exponent())
    })
}

/// `λ_d` for `2 ≤ d ≤ 120`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_lambda_d(d: u32, out: *mut f64) -> FrlStatus {
    scalar(out, || higherdim::lambda_d(d))
}

/// The dimension-`d` lower bound on `A(f)A(f̂)`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_bound_new(d: u32, out: *mut f64) -> FrlStatus {
    scalar(out, || higherdim::bound_new(d))
}

/// The kernel `Υ_A(x)`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_upsilon(a: f64, x: f64, out: *mut f64) -> FrlStatus {
    scalar(out, || {
        if !(a > 0.0 && a <= 0.5 && x.is_finite()) {
            return Err(Error::Domain(format!("need 0 < A <= 1/2 and finite x, got A = {a}, x = {x}")));
        }
        Ok(lowerbound::upsilon(a, x))
    })
}

/// Upper bound for `τ` on `(1/4, 1/2]`.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_tau_ub(a: f64, out: *mut f64) -> FrlStatus {
    scalar(out, || lowerbound::tau_ub(a))
}

/// Margin of the lower-bound inequality at `(A, τ)`; negative means it fails.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_inequality_margin(a: f64, tau: f64, out: *mut f64) -> FrlStatus {
    scalar(out, || lowerbound::check_inequality(a, tau).map(|r| r.margin))
}

fn new_handle(f: frl_core::Result<EigenPlusFunction>, out: *mut *mut FrlEigenFunction) -> FrlStatus {
    guard(|| {
        if out.is_null() {
            return Err((FrlStatus::NullPointer, "output pointer is null".into()));
        }
        let inner = lift(f)?;
        write_out(out, Box::into_raw(Box::new(FrlEigenFunction { inner })))
    })
}

/// Builds an expansion from `len` coefficients. With `normalize` set the
/// expansion must vanish at the origin, otherwise `FRL_STATUS_DOMAIN`.
///
/// # Safety
/// `coeffs` must be valid for `len` reads; `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_new(
    coeffs: *const f64,
    len: usize,
    normalize: bool,
    out: *mut *mut FrlEigenFunction,
) -> FrlStatus {
    if coeffs.is_null() {
        set_error("coefficient pointer is null".into());
        return FrlStatus::NullPointer;
    }
    let c = std::slice::from_raw_parts(coeffs, len).to_vec();
    new_handle(
        if normalize { EigenPlusFunction::normalized(c) } else { EigenPlusFunction::new(c) },
        out,
    )
}

/// The built-in degree-12 reference candidate.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_reference(out: *mut *mut FrlEigenFunction) -> FrlStatus {
    new_handle(Ok(EigenPlusFunction::reference_candidate()), out)
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `f` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_free(f: *mut FrlEigenFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of coefficients, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_len(f: *const FrlEigenFunction) -> usize {
    f.as_ref().map_or(0, |f| f.inner.coeffs().len())
}

/// Copies up to `len` coefficients into `buf`.
///
/// # Safety
/// `f` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_coeffs(f: *const FrlEigenFunction, buf: *mut f64, len: usize) -> FrlStatus {
    guard(|| {
        let f = handle(f)?;
        if buf.is_null() {
            return Err((FrlStatus::NullPointer, "buffer is null".into()));
        }
        let c = f.coeffs();
        std::ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len().min(len));
        Ok(())
    })
}

fn handle<'a>(f: *const FrlEigenFunction) -> Result<&'a EigenPlusFunction, (FrlStatus, String)> {
    unsafe { f.as_ref() }
        .map(|f| &f.inner)
        .ok_or((FrlStatus::NullPointer, "handle is null".into()))
}

/// `f(x)`.
///
/// # Safety
/// `f` must be null or a live handle; `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_eval(f: *const FrlEigenFunction, x: f64, out: *mut f64) -> FrlStatus {
    guard(|| {
        let f = handle(f)?;
        write_out(out, f.eval(x))
    })
}

/// `A(f)`, the last sign change, found with the default scan step.
///
/// # Safety
/// `f` must be null or a live handle; `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn frl_eigen_largest_root(f: *const FrlEigenFunction, out: *mut f64) -> FrlStatus {
    guard(|| {
        let f = handle(f)?;
        if out.is_null() {
            return Err((FrlStatus::NullPointer, "output pointer is null".into()));
        }
        let cert = lift(root_certificate(f, DEFAULT_GRID_STEP, 1e-12))?;
        write_out(out, cert.largest_root)
    })
}
