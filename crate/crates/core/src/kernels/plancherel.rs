use super::{lattice_step, symmetric_lattice_matrix};
use crate::numerics::{richardson_limit, TruncatedOperator};
use crate::partitions::PlancherelParams;
use crate::specfun::bessel_j;
use crate::{Error, Result};

/// The discrete Bessel-type kernel `K_theta` of the poissonized Plancherel
/// family, with `J_k = J_k(2 sqrt(theta))`:
/// `sqrt(xy)/(x^2 - y^2) (2 sqrt(theta) (J_{x-1} J_y - J_{y-1} J_x) - (x - y) J_x J_y)`.
#[derive(Debug, Clone, Copy)]
pub struct PlancherelKernel {
    theta: f64,
}

impl PlancherelKernel {
    pub fn new(params: PlancherelParams) -> Self {
        Self { theta: params.theta() }
    }

    /// Off-diagonal formula at real orders `x != y`.
    pub fn off_diagonal(&self, x: f64, y: f64) -> f64 {
        let z = 2.0 * self.theta.sqrt();
        let (jx, jy) = (bessel_j(x, z), bessel_j(y, z));
        let (jx1, jy1) = (bessel_j(x - 1.0, z), bessel_j(y - 1.0, z));
        (x * y).sqrt() / (x * x - y * y) * (z * (jx1 * jy - jy1 * jx) - (x - y) * jx * jy)
    }

    pub fn value(&self, x: u32, y: u32) -> Result<f64> {
        if x == 0 || y == 0 {
            return Err(Error::domain("k_plancherel", "sites start at 1"));
        }
        if x != y {
            return Ok(self.off_diagonal(x as f64, y as f64));
        }
        let xf = x as f64;
        richardson_limit(|h| Ok(self.off_diagonal(xf + h, xf - h)), lattice_step(xf))
    }

    pub fn matrix(&self, n: usize) -> Result<TruncatedOperator> {
        symmetric_lattice_matrix(n, |x, y| self.value(x, y))
    }
}

pub fn k_plancherel(x: u32, y: u32, params: PlancherelParams) -> Result<f64> {
    PlancherelKernel::new(params).value(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let p = PlancherelParams::new(1.0).unwrap();
        assert!((k_plancherel(1, 2, p).unwrap() - 0.143_185_493_041_888_6).abs() < 1e-13);
        assert!((k_plancherel(2, 1, p).unwrap() - 0.143_185_493_041_888_6).abs() < 1e-13);
        assert!((k_plancherel(1, 1, p).unwrap() - 0.308_630_707_566_663_94).abs() < 1e-11);
    }

    #[test]
    fn diagonal_is_a_probability() {
        let k = PlancherelKernel::new(PlancherelParams::new(3.0).unwrap());
        for x in 1..=12 {
            let d = k.value(x, x).unwrap();
            assert!(d > 0.0 && d < 1.0, "x={x}: {d}");
        }
    }
}
