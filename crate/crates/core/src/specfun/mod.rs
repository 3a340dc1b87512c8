//! Special functions needed by the kernels: complex log-gamma, the Gauss
//! hypergeometric function at non-positive argument, the Tricomi function
//! `Psi`, Bessel `J`, Macdonald `K` (real or purely imaginary order) and
//! Whittaker `W`.
//!
//! Everything is a pure function of its arguments.

mod bessel;
mod gamma;
mod hypergeometric;
mod tricomi;
mod whittaker;

pub use bessel::{bessel_j, macdonald_k, macdonald_k_complex};
pub use gamma::{gamma_real, ln_gamma, ln_gamma_pair, ln_gamma_real, ln_sin_pi, recip_gamma_real};
pub use hypergeometric::gauss_2f1;
pub use tricomi::{psi_identity_residual, tricomi_psi, tricomi_psi_continued};
pub use whittaker::{whittaker_w, whittaker_w_complex};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Order of a Bessel-type function: real, or purely imaginary `i * value`.
///
/// The parameter `nu` of the strict-partition model lives here: it is real
/// with `|nu| < 1/2` when `alpha <= 1/4` and purely imaginary otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum Order {
    Real(f64),
    Imaginary(f64),
}

impl Order {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Order::Real(v) => Complex64::new(v, 0.0),
            Order::Imaginary(v) => Complex64::new(0.0, v),
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Order::Real(v) => Order::Real(-v),
            Order::Imaginary(v) => Order::Imaginary(-v),
        }
    }

    /// `ln cos(pi nu)`; `cos(pi nu)` is positive for every admissible `nu`.
    pub fn ln_cos_pi(self) -> Result<f64> {
        match self {
            Order::Real(v) => {
                let c = (std::f64::consts::PI * v).cos();
                if c <= 0.0 {
                    return Err(Error::domain("ln_cos_pi", format!("cos(pi*{v}) <= 0")));
                }
                Ok(c.ln())
            }
            Order::Imaginary(t) => {
                // ln cosh(pi t) without overflow
                let a = std::f64::consts::PI * t.abs();
                Ok(a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2)
            }
        }
    }

    /// `cos(pi nu)` as a real number (`cosh(pi t)` for imaginary order).
    pub fn cos_pi(self) -> f64 {
        match self {
            Order::Real(v) => (std::f64::consts::PI * v).cos(),
            Order::Imaginary(t) => (std::f64::consts::PI * t).cosh(),
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Order::Real(v) | Order::Imaginary(v) => v == 0.0,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Real(v) => write!(f, "{v}"),
            Order::Imaginary(v) => write!(f, "{v}i"),
        }
    }
}

/// Returns the real part of `z` after checking `|Im z| <= tol * scale`.
pub(crate) fn ensure_real(what: &'static str, z: Complex64, tol: f64, scale: f64) -> Result<f64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NotReal {
            what,
            real: z.re,
            imag: z.im,
        });
    }
    if z.im.abs() > tol * scale {
        return Err(Error::NotReal {
            what,
            real: z.re,
            imag: z.im,
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_cos_pi_matches_direct_evaluation() {
        for o in [Order::Real(0.3), Order::Real(-0.2), Order::Imaginary(0.7)] {
            assert!((o.ln_cos_pi().unwrap() - o.cos_pi().ln()).abs() < 1e-14);
        }
        // far beyond f64 range of cosh
        let big = Order::Imaginary(400.0).ln_cos_pi().unwrap();
        assert!((big - (std::f64::consts::PI * 400.0 - std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn ensure_real_rejects_residual_imaginary_part() {
        assert!(ensure_real("t", Complex64::new(1.0, 1e-12), 1e-10, 1.0).is_ok());
        assert!(ensure_real("t", Complex64::new(1.0, 1e-6), 1e-10, 1.0).is_err());
        assert!(ensure_real("t", Complex64::new(f64::NAN, 0.0), 1e-10, 1.0).is_err());
    }
}
