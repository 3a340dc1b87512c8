use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::continuum::{MacdonaldForm, MacdonaldKernel};
use crate::numerics::{apply_sturm_liouville, integrate_half_line};
use crate::specfun::{macdonald_k, whittaker_w, Order};
use crate::{Error, Result, TOLERANCES};

/// How `f_m` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenRoute {
    /// `W_{0, im}(u) / u`.
    Whittaker,
    /// `K_{im}(u/2) / sqrt(pi u)`.
    Macdonald,
}

/// Eigenfunction `f_m(u) = W_{0, im}(u) / u` of the Sturm-Liouville operator
/// `D = -d/du u^2 d/du + u^2/4` with eigenvalue `m^2 + 1/4`.
pub fn eigenfunction_f(m: f64, u: f64) -> Result<f64> {
    eigenfunction_f_via(m, u, EigenRoute::Whittaker)
}

pub fn eigenfunction_f_via(m: f64, u: f64, route: EigenRoute) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::domain("eigenfunction_f", format!("m = {m} must be non-negative")));
    }
    match route {
        EigenRoute::Whittaker => Ok(whittaker_w(0, Order::Imaginary(m), u)? / u),
        EigenRoute::Macdonald => Ok(macdonald_k(Order::Imaginary(m), 0.5 * u)? / (PI * u).sqrt()),
    }
}

/// `h_nu(r) = cos(pi nu) / (cos(pi nu) + cosh(pi sqrt(r - 1/4)))`, the
/// eigenvalue of the continuum kernel on `f_m` with `r = m^2 + 1/4`.
pub fn spectral_h(nu: Order, r: f64) -> Result<f64> {
    if !(r >= 0.25) {
        return Err(Error::domain("spectral_h", format!("r = {r} must be at least 1/4")));
    }
    let c = nu.cos_pi();
    Ok(c / (c + (PI * (r - 0.25).sqrt()).cosh()))
}

/// Relative residual of `D f_m = (m^2 + 1/4) f_m` at `u`, finite differences with step `h`.
pub fn sturm_liouville_residual(m: f64, u: f64, h: f64) -> Result<f64> {
    let lhs = apply_fallible(|s| eigenfunction_f(m, s), u, h)?;
    let f = eigenfunction_f(m, u)?;
    Ok((lhs - (m * m + 0.25) * f).abs() / f.abs())
}

const EIGEN_RELATION_CUTOFF: f64 = 1e-10;

/// Both sides of `int_0^inf K_nu(u, v) f_m(v) dv = h_nu(m^2 + 1/4) f_m(u)`.
///
/// The integral uses the Whittaker form of the kernel and starts at
/// `v = 1e-10`. Near zero the integrand is `O(v^{-1/2 - |Re nu|})` times
/// bounded oscillation, so the omitted piece is `O(1e-10^{1/2 - |Re nu|})`.
pub fn eigen_relation(nu: Order, m: f64, u: f64) -> Result<(f64, f64)> {
    let kernel = MacdonaldKernel::new(nu, MacdonaldForm::Whittaker)?;
    let failure = RefCell::new(None);
    let integral = integrate_half_line(
        |s, _| {
            let v = EIGEN_RELATION_CUTOFF + s;
            let value = kernel.value(u, v).and_then(|k| Ok(k * eigenfunction_f(m, v)?));
            match value {
                Ok(x) => x.into(),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0.into()
                }
            }
        },
        1e-7,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((integral.re, spectral_h(nu, m * m + 0.25)? * eigenfunction_f(m, u)?))
}

/// `|D_u K(u, v) - D_v K(u, v)|` for the Bessel form of the continuum kernel.
pub fn commutation_residual(u: f64, v: f64, nu: Order) -> Result<f64> {
    if !(u > 0.05 && v > 0.05) {
        return Err(Error::domain("commutation_residual", "both arguments must exceed 0.05"));
    }
    if u == v {
        return Err(Error::domain("commutation_residual", "undefined on the diagonal"));
    }
    let kernel = MacdonaldKernel::new(nu, MacdonaldForm::Bessel)?;
    let h = TOLERANCES.finite_difference_step;
    let du = apply_fallible(|s| kernel.value(s, v), u, h)?;
    let dv = apply_fallible(|s| kernel.value(u, s), v, h)?;
    Ok((du - dv).abs())
}

fn apply_fallible<F>(f: F, u: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let value = apply_sturm_liouville(
        |s| match f(s) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        u,
        h,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree() {
        for (m, u) in [(1.0, 2.0), (0.5, 0.3), (2.0, 7.0)] {
            let a = eigenfunction_f_via(m, u, EigenRoute::Whittaker).unwrap();
            let b = eigenfunction_f_via(m, u, EigenRoute::Macdonald).unwrap();
            assert!((a - b).abs() < 1e-9 * a.abs().max(1e-3), "({m},{u}): {a} {b}");
        }
    }

    #[test]
    fn eigenfunctions_decay() {
        assert!(eigenfunction_f(1.0, 50.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn spectral_h_values() {
        let h = spectral_h(Order::Real(0.3), 0.25).unwrap();
        let c = (0.3 * PI).cos();
        assert!((h - c / (c + 1.0)).abs() < 1e-15);
        let h = spectral_h(Order::Imaginary(1.0), 0.25).unwrap();
        assert!((h - PI.cosh() / (PI.cosh() + 1.0)).abs() < 1e-15);
        assert!(spectral_h(Order::Real(0.0), 0.2).is_err());
    }

    #[test]
    fn sturm_liouville_eigen_equation() {
        let r = sturm_liouville_residual(1.0, 1.5, 1e-3).unwrap();
        assert!(r < 1e-5, "{r}");
    }

    #[test]
    fn commutation() {
        assert!(commutation_residual(1.0, 2.0, Order::Real(0.25)).unwrap() < 1e-5);
        assert!(commutation_residual(0.5, 3.0, Order::Imaginary(0.7)).unwrap() < 1e-4);
        assert!(commutation_residual(1.0, 1.0, Order::Real(0.25)).is_err());
    }

    #[test]
    fn eigen_relation_holds() {
        let (lhs, rhs) = eigen_relation(Order::Real(0.3), 1.0, 1.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-4 * rhs.abs(), "{lhs} {rhs}");
    }
}
