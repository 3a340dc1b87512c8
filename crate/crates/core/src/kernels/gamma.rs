use std::f64::consts::PI;

use num_complex::Complex64;

use super::{lattice_step, symmetric_lattice_matrix};
use crate::numerics::{richardson_limit, TruncatedOperator};
use crate::specfun::{ensure_real, ln_gamma, Order};
use crate::{Error, Result, TOLERANCES};

/// The lattice kernel obtained as `xi -> 1` at fixed `nu`:
/// `sqrt(xy) cot(pi nu) / (pi Xi(x,y))
///  (Gamma(1/2+nu+x) Gamma(1/2-nu+y) - Gamma(1/2+nu+y) Gamma(1/2-nu+x)) / (x^2 - y^2)`.
///
/// Dividing the bracket by `Xi` leaves `2 sinh(D/2)` with
/// `D = [ln Gamma(1/2+nu+x) - ln Gamma(1/2-nu+x)] - [same at y]`, which is
/// how it is evaluated.
#[derive(Debug, Clone, Copy)]
pub struct GammaKernel {
    nu: Complex64,
    cot: Complex64,
}

impl GammaKernel {
    /// `nu = 0` is rejected: there `cot(pi nu)` has a pole against a vanishing bracket.
    pub fn new(nu: Order) -> Result<Self> {
        if nu.is_zero() {
            return Err(Error::invalid("gamma kernel is undefined at nu = 0"));
        }
        let nu = nu.to_complex();
        let arg = nu * PI;
        Ok(Self {
            nu,
            cot: arg.cos() / arg.sin(),
        })
    }

    fn log_ratio(&self, x: f64) -> Result<Complex64> {
        Ok(ln_gamma(0.5 + self.nu + x)? - ln_gamma(0.5 - self.nu + x)?)
    }

    /// Off-diagonal formula at real `x != y`.
    pub fn off_diagonal(&self, x: f64, y: f64) -> Result<f64> {
        let d = self.log_ratio(x)? - self.log_ratio(y)?;
        let value = (x * y).sqrt() / (PI * (x * x - y * y)) * self.cot * 2.0 * (0.5 * d).sinh();
        ensure_real("k_gamma", value, TOLERANCES.realness, 1.0 + value.re.abs())
    }

    pub fn value(&self, x: u32, y: u32) -> Result<f64> {
        if x == 0 || y == 0 {
            return Err(Error::domain("k_gamma", "sites start at 1"));
        }
        if x != y {
            return self.off_diagonal(x as f64, y as f64);
        }
        let xf = x as f64;
        richardson_limit(|h| self.off_diagonal(xf + h, xf - h), lattice_step(xf))
    }

    pub fn matrix(&self, n: usize) -> Result<TruncatedOperator> {
        symmetric_lattice_matrix(n, |x, y| self.value(x, y))
    }
}

pub fn k_gamma(x: u32, y: u32, nu: Order) -> Result<f64> {
    GammaKernel::new(nu)?.value(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::HyperKernel;
    use crate::partitions::ModelParams;

    #[test]
    fn rejects_zero_order() {
        assert!(k_gamma(1, 2, Order::Real(0.0)).is_err());
    }

    #[test]
    fn symmetric_and_even_in_nu() {
        for nu in [Order::Real(0.3), Order::Imaginary(0.8)] {
            for (x, y) in [(1, 2), (3, 7), (4, 4)] {
                let v = k_gamma(x, y, nu).unwrap();
                assert!((v - k_gamma(y, x, nu).unwrap()).abs() < 1e-14);
                assert!((v - k_gamma(x, y, nu.negated()).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn limit_of_lattice_kernel() {
        // alpha = 0.16 gives nu = 0.3
        let nu = Order::Real(0.3);
        let k = HyperKernel::new(ModelParams::new(0.16, 0.999).unwrap()).unwrap();
        for (x, y) in [(1, 1), (1, 2), (3, 5)] {
            let lattice = k.value(x, y).unwrap();
            let limit = k_gamma(x, y, nu).unwrap();
            assert!((lattice - limit).abs() < 1e-3, "({x},{y}): {lattice} vs {limit}");
        }
    }
}
