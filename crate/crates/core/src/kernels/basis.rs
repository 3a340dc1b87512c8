use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::partitions::ModelParams;
use crate::specfun::{ensure_real, gauss_2f1, ln_gamma, ln_gamma_pair, Order};
use crate::{Result, TOLERANCES};

/// The functions `phi_i(x) = 2F1(-1/2 - nu + i, -1/2 + nu + i; x + i; xi/(xi - 1))`
/// and `phi~(x) = 2F1(3/2 + nu, -1/2 - nu; x; xi/(xi - 1))`.
///
/// Values at lattice sites are memoized; the cache is behind a mutex so a
/// basis can be shared across threads.
#[derive(Debug)]
pub struct HypergeometricBasis {
    params: ModelParams,
    cache: Mutex<HashMap<(u32, u32), f64>>,
}

impl Clone for HypergeometricBasis {
    fn clone(&self) -> Self {
        Self {
            params: self.params,
            cache: Mutex::new(self.cache.lock().expect("cache poisoned").clone()),
        }
    }
}

impl HypergeometricBasis {
    pub fn new(params: ModelParams) -> Self {
        Self {
            params,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    fn argument(&self) -> f64 {
        let xi = self.params.xi();
        xi / (xi - 1.0)
    }

    /// `phi_i(x)` for real `x > 0`.
    pub fn phi_real(&self, i: u32, x: f64) -> Result<f64> {
        let nu = self.params.nu().to_complex();
        let shift = i as f64;
        let value = gauss_2f1(
            -0.5 - nu + shift,
            -0.5 + nu + shift,
            Complex64::new(x + shift, 0.0),
            self.argument(),
        )?;
        ensure_real("phi_i", value, TOLERANCES.realness, 1.0 + value.re.abs())
    }

    /// `phi_i(x)` at a lattice site, memoized.
    pub fn phi(&self, i: u32, x: u32) -> Result<f64> {
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&(i, x)) {
            return Ok(*v);
        }
        let v = self.phi_real(i, x as f64)?;
        self.cache.lock().expect("cache poisoned").insert((i, x), v);
        Ok(v)
    }

    /// `phi~(x)` for real `x > 0`. Its parameters are not a conjugate pair,
    /// so it is complex when `nu` is imaginary.
    pub fn phi_tilde(&self, x: f64) -> Result<Complex64> {
        let nu = self.params.nu().to_complex();
        gauss_2f1(1.5 + nu, -0.5 - nu, Complex64::new(x, 0.0), self.argument())
    }

    /// Residual of the contiguous relation
    /// `phi_0(x) = phi~(x)/(1 + xi) - xi (1 + 2 nu - x(1 - xi)) / (x (1 - xi^2)) phi_1(x)`.
    ///
    /// For imaginary `nu` both `phi~` and the coefficient of `phi_1` are
    /// complex, so the relation is checked in complex arithmetic.
    pub fn identity_residual(&self, x: f64) -> Result<f64> {
        let xi = self.params.xi();
        let nu = self.params.nu().to_complex();
        let phi0 = self.phi_real(0, x)?;
        let phi1 = self.phi_real(1, x)?;
        let tilde = self.phi_tilde(x)?;
        let coefficient = xi * (1.0 + 2.0 * nu - x * (1.0 - xi)) / (x * (1.0 - xi * xi));
        let residual = phi0 - tilde / (1.0 + xi) + coefficient * phi1;
        Ok(residual.norm())
    }
}

/// `ln Xi(x, y)` with `Xi = {Gamma(1/2-nu+x) Gamma(1/2+nu+x) Gamma(1/2-nu+y) Gamma(1/2+nu+y)}^{1/2}`.
pub fn ln_xi_factor(nu: Order, x: f64, y: f64) -> Result<f64> {
    Ok(0.5 * (ln_gamma_pair(nu, x)? + ln_gamma_pair(nu, y)?))
}

/// `Xi(x, y)`, real and positive.
pub fn xi_factor(x: u32, y: u32, params: ModelParams) -> Result<f64> {
    Ok(ln_xi_factor(params.nu(), x as f64, y as f64)?.exp())
}

/// `ln g(x)` for the gauge `g(x) = sqrt(Gamma(1/2+nu+x) Gamma(1/2-nu+x)) / Gamma(1/2+nu+x)`,
/// with the positive square root. Valid at positive `x` and at negative
/// integers `x = -n`, where the product equals
/// `pi^2 / (cos^2(pi nu) Gamma(1/2-nu+n) Gamma(1/2+nu+n))`.
pub fn ln_gauge(nu: Order, x: f64) -> Result<Complex64> {
    let ln_product = if x > 0.0 {
        ln_gamma_pair(nu, x)?
    } else {
        2.0 * std::f64::consts::PI.ln() - 2.0 * nu.ln_cos_pi()? - ln_gamma_pair(nu, -x)?
    };
    Ok(0.5 * ln_product - ln_gamma(0.5 + nu.to_complex() + x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn mp(alpha: f64, xi: f64) -> ModelParams {
        ModelParams::new(alpha, xi).unwrap()
    }

    #[test]
    fn xi_factor_cases() {
        let p = mp(0.25, 0.3);
        assert!((xi_factor(1, 1, p).unwrap() - PI / 4.0).abs() < 1e-14);
        let q = mp(2.0, 0.3);
        assert_eq!(xi_factor(2, 5, q).unwrap(), xi_factor(5, 2, q).unwrap());
        let diag = xi_factor(3, 3, q).unwrap();
        let pair = ln_gamma_pair(q.nu(), 3.0).unwrap().exp();
        assert!((diag - pair).abs() < 1e-13 * pair);
    }

    #[test]
    fn contiguous_identity_holds() {
        let cases = [(1.0, 1.0, 0.5, 1e-10), (7.0, 5.0, 0.9, 1e-9), (2.0, 2.0, 0.4, 1e-9), (3.0, 0.1, 0.7, 1e-10)];
        for (x, alpha, xi, tol) in cases {
            let basis = HypergeometricBasis::new(mp(alpha, xi));
            let r = basis.identity_residual(x).unwrap();
            assert!(r < tol, "x={x} alpha={alpha} xi={xi}: {r}");
        }
    }

    #[test]
    fn phi_memoization_is_transparent() {
        let basis = HypergeometricBasis::new(mp(1.0, 0.4));
        let a = basis.phi(2, 3).unwrap();
        let b = basis.phi(2, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, basis.phi_real(2, 3.0).unwrap());
    }

    #[test]
    fn gauge_at_negative_integers_squares_to_product() {
        // g(-n)^2 Gamma(1/2+nu-n)^2 = Gamma(1/2+nu-n) Gamma(1/2-nu-n)
        for nu in [Order::Real(0.3), Order::Imaginary(0.8)] {
            for n in 1..4 {
                let x = -(n as f64);
                let lhs = (2.0 * ln_gauge(nu, x).unwrap() + 2.0 * ln_gamma(0.5 + nu.to_complex() + x).unwrap()).exp();
                let rhs = (ln_gamma(0.5 + nu.to_complex() + x).unwrap() + ln_gamma(0.5 - nu.to_complex() + x).unwrap()).exp();
                assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "{nu:?} {n}: {lhs} vs {rhs}");
            }
        }
    }
}
