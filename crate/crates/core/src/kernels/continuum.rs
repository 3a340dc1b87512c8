use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensemble::kernel_from_l;
use crate::numerics::{richardson_limit, EvenExtrapolation, SiteMap, TruncatedOperator};
use crate::specfun::{ensure_real, macdonald_k, macdonald_k_complex, whittaker_w, Order};
use crate::{Error, Result, TOLERANCES};

/// The two closed forms of the continuum kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MacdonaldForm {
    /// `cos(pi nu)/pi [2 W_1(u) W_0(v) - 2 W_1(v) W_0(u) - (u - v) W_0(u) W_0(v)] / (u^2 - v^2)`
    /// with `W_k = W_{k, nu}`.
    Whittaker,
    /// `sqrt(uv) cos(pi nu)/pi^2 [u K_{nu+1}(u/2) K_nu(v/2) - v K_{nu+1}(v/2) K_nu(u/2)] / (u^2 - v^2)`.
    Bessel,
}

/// The kernel `K_nu(u, v)` on the half-line, the `xi -> 1` scaling limit of
/// the lattice kernel.
///
/// Points with `|u - v| < h/4`, `h = 0.02 min(1, (u+v)/2)`, are taken from
/// an even interpolant in `t = (u - v)/2` through the values at
/// `t = h, h/2, h/4`; the diagonal is its Richardson limit.
#[derive(Debug, Clone, Copy)]
pub struct MacdonaldKernel {
    nu: Order,
    form: MacdonaldForm,
    cos_over_pi: f64,
}

impl MacdonaldKernel {
    pub fn new(nu: Order, form: MacdonaldForm) -> Result<Self> {
        let cos = nu.cos_pi();
        if !(cos > 0.0) {
            return Err(Error::invalid(format!("cos(pi nu) must be positive, nu = {nu:?}")));
        }
        Ok(Self {
            nu,
            form,
            cos_over_pi: cos / PI,
        })
    }

    pub fn nu(&self) -> Order {
        self.nu
    }

    pub fn form(&self) -> MacdonaldForm {
        self.form
    }

    /// Closed form at `u != v`; loses accuracy as `u -> v`.
    pub fn off_diagonal(&self, u: f64, v: f64) -> Result<f64> {
        let denom = u * u - v * v;
        match self.form {
            MacdonaldForm::Whittaker => {
                let (w0u, w0v) = (whittaker_w(0, self.nu, u)?, whittaker_w(0, self.nu, v)?);
                let (w1u, w1v) = (whittaker_w(1, self.nu, u)?, whittaker_w(1, self.nu, v)?);
                Ok(self.cos_over_pi * (2.0 * w1u * w0v - 2.0 * w1v * w0u - (u - v) * w0u * w0v) / denom)
            }
            MacdonaldForm::Bessel => {
                let shifted = self.nu.to_complex() + 1.0;
                let (ku, kv) = (macdonald_k(self.nu, 0.5 * u)?, macdonald_k(self.nu, 0.5 * v)?);
                let (k1u, k1v) = (macdonald_k_complex(shifted, 0.5 * u)?, macdonald_k_complex(shifted, 0.5 * v)?);
                let (first, second) = (u * k1u * kv, v * k1v * ku);
                let pref = (u * v).sqrt() * self.cos_over_pi / PI / denom;
                let value: Complex64 = pref * (first - second);
                ensure_real(
                    "k_macdonald",
                    value,
                    TOLERANCES.realness,
                    1.0 + value.re.abs() + pref.abs() * (first.norm() + second.norm()),
                )
            }
        }
    }

    fn step(mid: f64) -> f64 {
        TOLERANCES.richardson_base * mid.min(1.0)
    }

    pub fn value(&self, u: f64, v: f64) -> Result<f64> {
        if !(u > 0.0 && v > 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(Error::domain("k_macdonald", format!("({u}, {v}) must be positive")));
        }
        let (mid, half_gap) = (0.5 * (u + v), 0.5 * (u - v));
        let h = Self::step(mid);
        let along = |s: f64| self.off_diagonal(mid + s, mid - s);
        if half_gap == 0.0 {
            richardson_limit(along, h)
        } else if half_gap.abs() < 0.25 * h {
            Ok(EvenExtrapolation::sample(along, h)?.eval(half_gap))
        } else {
            self.off_diagonal(u, v)
        }
    }
}

pub fn k_macdonald(u: f64, v: f64, nu: Order, form: MacdonaldForm) -> Result<f64> {
    MacdonaldKernel::new(nu, form)?.value(u, v)
}

/// `L_nu(u, v) = cos(pi nu)/pi e^{-(u+v)/2} / (u + v)`.
pub fn l_continuum(u: f64, v: f64, nu: Order) -> f64 {
    nu.cos_pi() / PI * (-0.5 * (u + v)).exp() / (u + v)
}

/// Midpoint discretization of the continuum operators on
/// `u_i = (i - 1/2) h`, `i = 1..=nodes`.
///
/// `l` holds `h L_nu(u_i, u_j)` and `k = l (1 + l)^-1`, so `k[(i, j)] / h`
/// approximates `K_nu(u_i, u_j)`.
#[derive(Debug, Clone)]
pub struct ContinuumDiscretization {
    pub step: f64,
    pub l: TruncatedOperator,
    pub k: TruncatedOperator,
}

impl ContinuumDiscretization {
    pub fn new(nu: Order, step: f64, nodes: usize) -> Result<Self> {
        if !(step > 0.0) || nodes == 0 {
            return Err(Error::invalid("discretization needs a positive step and at least one node"));
        }
        let grid: Vec<f64> = (0..nodes).map(|i| (i as f64 + 0.5) * step).collect();
        let entries = DMatrix::from_fn(nodes, nodes, |i, j| step * l_continuum(grid[i], grid[j], nu));
        let l = TruncatedOperator::new(entries, SiteMap::Grid(grid))?;
        let k = kernel_from_l(&l)?;
        Ok(Self { step, l, k })
    }

    pub fn grid(&self) -> &[f64] {
        match self.l.sites() {
            SiteMap::Grid(nodes) => nodes,
            SiteMap::Lattice => unreachable!("built on a grid"),
        }
    }

    /// Density estimate `K~(u_i, u_j) / h` for 0-based node indices.
    pub fn kernel_density(&self, i: usize, j: usize) -> f64 {
        self.k.get(i, j) / self.step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let cases = [
            (Order::Real(0.25), 1.0, 2.0, 0.014_664_784_267_011_920_9),
            (Order::Real(0.25), 0.5, 3.0, 0.009_383_291_917_390_858_98),
            (Order::Imaginary(0.7), 1.0, 2.0, 0.063_941_424_103_942_645_4),
            (Order::Imaginary(0.7), 0.5, 3.0, 0.035_590_398_487_069_309_3),
        ];
        for (nu, u, v, expected) in cases {
            for form in [MacdonaldForm::Whittaker, MacdonaldForm::Bessel] {
                let got = k_macdonald(u, v, nu, form).unwrap();
                assert!((got - expected).abs() < 1e-11, "{nu:?} {form:?} ({u},{v}): {got}");
                let swapped = k_macdonald(v, u, nu.negated(), form).unwrap();
                assert!((got - swapped).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn near_diagonal_is_continuous() {
        let k = MacdonaldKernel::new(Order::Real(0.25), MacdonaldForm::Bessel).unwrap();
        let diag = k.value(1.0, 1.0).unwrap();
        let inner = k.value(1.0 + 0.004, 1.0 - 0.004).unwrap();
        let outer = k.value(1.0 + 0.006, 1.0 - 0.006).unwrap();
        assert!(diag > inner && inner > outer, "{diag} {inner} {outer}");
        assert!((diag - outer).abs() < 1e-4);
        let w = k_macdonald(1.0, 1.0, Order::Real(0.25), MacdonaldForm::Whittaker).unwrap();
        assert!((w - diag).abs() < 1e-8, "{w} {diag}");
    }

    #[test]
    fn l_continuum_substitution() {
        let v = l_continuum(1.0, 1.0, Order::Real(0.0));
        assert!((v - (-1.0f64).exp() / (2.0 * PI)).abs() < 1e-16);
    }
}
