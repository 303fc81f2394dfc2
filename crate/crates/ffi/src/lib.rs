//! C interface to the Skyrme relaxation laboratory.
//!
//! Every function returns a [`SkyrmeStatus`]; results come back through out
//! pointers. Objects are opaque and must be released with the matching
//! `_free` function. After a non-zero status,
//! [`skyrme_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skyrme_core::fit::{fit_power_law, fit_ringdown, suggest_tail_window};
use skyrme_core::perturbative::{asymptotic_coefficient, invert_initial_data};
use skyrme_core::radial::TimeSeries;
use skyrme_core::skyrmion::{solve_skyrmion, StaticProfile};
use skyrme_core::spectrum::{effective_potential, find_qnm, QnmConfig};
use skyrme_core::Error;

/// Status codes.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkyrmeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NoConvergence = 3,
    Numerical = 4,
    FitRejected = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SkyrmeStatus {
    match err {
        Error::InvalidInput(_) | Error::OutOfDomain(_) | Error::Config { .. } | Error::Io(_) => {
            SkyrmeStatus::InvalidInput
        }
        Error::NoConvergence(_) | Error::Bracket(_) => SkyrmeStatus::NoConvergence,
        Error::Fit(_) => SkyrmeStatus::FitRejected,
        Error::NonFinite { .. } | Error::Singular { .. } | Error::Blowup { .. } => SkyrmeStatus::Numerical,
    }
}

/// Run `f`, turning errors and panics into a status plus a message.
fn guard(f: impl FnOnce() -> Result<(), (SkyrmeStatus, String)>) -> SkyrmeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkyrmeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SkyrmeStatus::Panic
        }
    }
}

fn core<T>(r: skyrme_core::Result<T>) -> Result<T, (SkyrmeStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SkyrmeStatus, String) {
    (SkyrmeStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failure on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn skyrme_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Opaque static soliton.
pub struct SkyrmeProfile(StaticProfile);

/// Opaque time series.
pub struct SkyrmeSeries(TimeSeries);

/// Solve for the soliton with the given bisection tolerance.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn skyrme_profile_solve(tolerance: f64, out: *mut *mut SkyrmeProfile) -> SkyrmeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = core(solve_skyrmion(tolerance))?;
        *out = Box::into_raw(Box::new(SkyrmeProfile(p)));
        Ok(())
    })
}

/// Release a profile. Null is ignored.
///
/// # Safety
/// `profile` must come from [`skyrme_profile_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn skyrme_profile_free(profile: *mut SkyrmeProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Origin slope `b` and far-field coefficient `c`.
///
/// # Safety
/// `profile` must be a live handle; `b` and `c` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_profile_coefficients(
    profile: *const SkyrmeProfile,
    b: *mut f64,
    c: *mut f64,
) -> SkyrmeStatus {
    guard(|| {
        let p = profile.as_ref().ok_or_else(|| null("profile"))?;
        if b.is_null() || c.is_null() {
            return Err(null("output"));
        }
        *b = p.0.b;
        *c = p.0.c;
        Ok(())
    })
}

/// `S(r)` for `r >= 0`.
///
/// # Safety
/// `profile` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_profile_value(profile: *const SkyrmeProfile, r: f64, value: *mut f64) -> SkyrmeStatus {
    guard(|| {
        let p = profile.as_ref().ok_or_else(|| null("profile"))?;
        if value.is_null() {
            return Err(null("value"));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err((SkyrmeStatus::InvalidInput, format!("radius must be finite and non-negative, got {r}")));
        }
        *value = p.0.value(r);
        Ok(())
    })
}

/// Fundamental quasinormal mode `Omega - i Gamma` of the soliton, searched
/// from the guess with matching radius `r0` and outer radius `big_r`.
///
/// # Safety
/// `profile` must be a live handle; `omega` and `gamma` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_qnm_find(
    profile: *const SkyrmeProfile,
    omega_guess: f64,
    gamma_guess: f64,
    r0: f64,
    big_r: f64,
    tolerance: f64,
    omega: *mut f64,
    gamma: *mut f64,
) -> SkyrmeStatus {
    guard(|| {
        let p = profile.as_ref().ok_or_else(|| null("profile"))?;
        if omega.is_null() || gamma.is_null() {
            return Err(null("output"));
        }
        let pot = core(effective_potential(&p.0))?;
        let cfg = QnmConfig { r0, big_r, ..QnmConfig::default() };
        let mode = core(find_qnm(&pot, (omega_guess, gamma_guess), tolerance, &cfg))?;
        *omega = mode.omega;
        *gamma = mode.gamma;
        Ok(())
    })
}

/// Copy `len` samples into a new series. Times must increase strictly.
///
/// # Safety
/// `t` and `v` must each point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_series_new(
    t: *const f64,
    v: *const f64,
    len: usize,
    out: *mut *mut SkyrmeSeries,
) -> SkyrmeStatus {
    guard(|| {
        if t.is_null() || v.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let t = std::slice::from_raw_parts(t, len).to_vec();
        let v = std::slice::from_raw_parts(v, len).to_vec();
        let s = core(TimeSeries::from_pairs(t, v))?;
        *out = Box::into_raw(Box::new(SkyrmeSeries(s)));
        Ok(())
    })
}

/// Release a series. Null is ignored.
///
/// # Safety
/// `series` must come from [`skyrme_series_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn skyrme_series_free(series: *mut SkyrmeSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// `A e^{-Gamma t} sin(Omega t + delta)` fitted over a window.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SkyrmeRingdown {
    pub amplitude: f64,
    pub gamma: f64,
    pub omega: f64,
    pub phase: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_fit_ringdown(
    series: *const SkyrmeSeries,
    t1: f64,
    t2: f64,
    out: *mut SkyrmeRingdown,
) -> SkyrmeStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let f = core(fit_ringdown(&s.0, (t1, t2)))?;
        *out = SkyrmeRingdown { amplitude: f.amplitude, gamma: f.gamma, omega: f.omega, phase: f.phase, residual: f.residual };
        Ok(())
    })
}

/// `ln|v| = a - b ln t + c/t` fitted over a window.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SkyrmePowerLaw {
    pub offset: f64,
    pub exponent: f64,
    pub correction: f64,
    pub t1: f64,
    pub t2: f64,
    pub residual: f64,
}

/// Power-law fit. A window with `t1 <= 0` is chosen automatically.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_fit_power_law(
    series: *const SkyrmeSeries,
    t1: f64,
    t2: f64,
    out: *mut SkyrmePowerLaw,
) -> SkyrmeStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let window = if t1 <= 0.0 { core(suggest_tail_window(&s.0))? } else { (t1, t2) };
        let f = core(fit_power_law(&s.0, window))?;
        *out = SkyrmePowerLaw {
            offset: f.offset,
            exponent: f.exponent,
            correction: f.correction,
            t1: f.window.0,
            t2: f.window.1,
            residual: f.residual,
        };
        Ok(())
    })
}

/// Tail coefficient `c` of `F3 ~ c r t^-5` for `F(0,r) = A r^3 e^{-r^2}`.
///
/// # Safety
/// `c` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skyrme_tail_coefficient_gaussian_cubed(amplitude: f64, c: *mut f64) -> SkyrmeStatus {
    guard(|| {
        if c.is_null() {
            return Err(null("c"));
        }
        if !amplitude.is_finite() {
            return Err((SkyrmeStatus::InvalidInput, "amplitude must be finite".into()));
        }
        let a = core(invert_initial_data(|r: f64| r.powi(3) * (-r * r).exp()))?.scaled(amplitude);
        *c = asymptotic_coefficient(&a).c;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn null_outputs_are_reported() {
        let s = unsafe { skyrme_profile_solve(1e-8, ptr::null_mut()) };
        assert_eq!(s, SkyrmeStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(skyrme_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }

    #[test]
    fn non_increasing_times_are_invalid() {
        let t = [0.0, 1.0, 1.0];
        let v = [1.0, 2.0, 3.0];
        let mut h = ptr::null_mut();
        let s = unsafe { skyrme_series_new(t.as_ptr(), v.as_ptr(), 3, &mut h) };
        assert_eq!(s, SkyrmeStatus::InvalidInput);
        assert!(h.is_null());
    }

    #[test]
    fn freeing_null_is_harmless() {
        unsafe {
            skyrme_profile_free(ptr::null_mut());
            skyrme_series_free(ptr::null_mut());
        }
    }
}
