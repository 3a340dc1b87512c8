use std::f64::consts::PI;

use serde::Serialize;

use crate::partitions::{ModelParams, PlancherelParams};
use crate::specfun::{ln_gamma_pair, ln_gamma_real};
use crate::{Error, Result};

/// A nonnegative weight `psi` on the positive integers with a computable
/// bound on its tail sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "params")]
pub enum WeightFunction {
    /// `psi(x) = xi^x cos(pi nu) / (2 pi) Gamma(1/2 - nu + x) Gamma(1/2 + nu + x) / (x!)^2`.
    NuXi(ModelParams),
    /// `psi(x) = theta^x / (2 (x!)^2)`.
    Theta(PlancherelParams),
    /// Explicit values `psi(1), psi(2), ...`, zero beyond the table.
    Custom(Vec<f64>),
}

fn ln_factorial(x: u32) -> f64 {
    ln_gamma_real(x as f64 + 1.0).expect("positive argument")
}

impl WeightFunction {
    pub fn custom(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::invalid("custom weights must be finite and nonnegative"));
        }
        Ok(WeightFunction::Custom(values))
    }

    /// `ln psi(x)`; `-inf` where `psi` vanishes.
    pub fn ln_value(&self, x: u32) -> Result<f64> {
        if x == 0 {
            return Err(Error::domain("psi", "sites start at 1"));
        }
        match self {
            WeightFunction::NuXi(p) => {
                let nu = p.nu();
                Ok(x as f64 * p.xi().ln() + nu.ln_cos_pi()? - (2.0 * PI).ln()
                    + ln_gamma_pair(nu, x as f64)?
                    - 2.0 * ln_factorial(x))
            }
            WeightFunction::Theta(p) => {
                Ok(x as f64 * p.theta().ln() - std::f64::consts::LN_2 - 2.0 * ln_factorial(x))
            }
            WeightFunction::Custom(values) => Ok(values
                .get(x as usize - 1)
                .map(|v| v.ln())
                .unwrap_or(f64::NEG_INFINITY)),
        }
    }

    pub fn value(&self, x: u32) -> Result<f64> {
        Ok(self.ln_value(x)?.exp())
    }

    /// Upper bound on `sum_{x > n} psi(x)`.
    pub fn tail_bound(&self, n: u32) -> Result<f64> {
        let ratio = match self {
            WeightFunction::Custom(values) => {
                return Ok(values.iter().skip(n as usize).sum());
            }
            WeightFunction::Theta(p) => {
                // psi(x+1)/psi(x) = theta / (x+1)^2, decreasing
                p.theta() / ((n as f64 + 2.0).powi(2))
            }
            WeightFunction::NuXi(p) => {
                // psi(x+1)/psi(x) = xi ((x + 1/2)^2 - nu^2) / (x + 1)^2
                //                 = xi (1 - (x + 1 - alpha) / (x + 1)^2),
                // decreasing up to x = 2 alpha - 1, then increasing towards xi
                let a = p.alpha();
                let start = n as f64 + 1.0;
                let f = 1.0 - (start + 1.0 - a) / ((start + 1.0) * (start + 1.0));
                p.xi() * f.max(1.0)
            }
        };
        if ratio >= 1.0 {
            return Ok(f64::INFINITY);
        }
        Ok(self.value(n + 1)? / (1.0 - ratio))
    }

    /// Smallest window `N >= 1` with `sum_{x > N} psi(x) < tail`.
    pub fn window(&self, tail: f64) -> Result<u32> {
        if let WeightFunction::Custom(values) = self {
            let mut n = values.len() as u32;
            while n > 1 && self.tail_bound(n - 1)? < tail {
                n -= 1;
            }
            return Ok(n.max(1));
        }
        let mut n = 1;
        while self.tail_bound(n)? >= tail {
            n += 1;
            if n > 1_000_000 {
                return Err(Error::NonConvergence {
                    what: "psi window",
                    iterations: n as usize,
                });
            }
        }
        Ok(n)
    }
}

/// `psi_{nu,xi}(x)`.
pub fn psi_nuxi(x: u32, params: ModelParams) -> Result<f64> {
    WeightFunction::NuXi(params).value(x)
}

/// `psi_theta(x)`.
pub fn psi_theta(x: u32, params: PlancherelParams) -> f64 {
    WeightFunction::Theta(params).value(x).expect("theta weight is total")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(alpha: f64, xi: f64) -> ModelParams {
        ModelParams::new(alpha, xi).unwrap()
    }

    #[test]
    fn nu_zero_value() {
        // Gamma(3/2)^2 = pi / 4, so psi(1) = xi / 8
        let v = psi_nuxi(1, mp(0.25, 0.3)).unwrap();
        assert!((v - 0.3 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn nu_sign_invariance() {
        let p = mp(5.0, 0.3);
        let a = psi_nuxi(4, p).unwrap();
        let b = psi_nuxi(4, p.with_negated_nu()).unwrap();
        assert!((a - b).abs() <= 1e-14 * a);
        let p = mp(0.2, 0.3);
        let a = psi_nuxi(4, p).unwrap();
        let b = psi_nuxi(4, p.with_negated_nu()).unwrap();
        assert!((a - b).abs() <= 1e-14 * a);
    }

    #[test]
    fn ratio_tends_to_xi() {
        let p = mp(1.0, 0.4);
        let r = psi_nuxi(201, p).unwrap() / psi_nuxi(200, p).unwrap();
        assert!((r / 0.4 - 1.0).abs() < 0.01);
    }

    #[test]
    fn theta_values_and_degeneration() {
        let t = PlancherelParams::new(1.0).unwrap();
        assert!((psi_theta(1, t) - 0.5).abs() < 1e-15);
        assert!((psi_theta(2, t) - 0.125).abs() < 1e-15);
        // with alpha = theta / xi the ratio is prod_j (1 + xi j (j - 1) / theta),
        // so the relative deviation is xi sum_j j (j - 1) to first order
        let xi = 1e-4;
        let p = mp(1.0 / xi, xi);
        for x in 1..=6u32 {
            let rel = psi_nuxi(x, p).unwrap() / psi_theta(x, t) - 1.0;
            let first_order = xi * (1..=x).map(|j| (j * (j - 1)) as f64).sum::<f64>();
            assert!((rel - first_order).abs() <= first_order * first_order + 1e-14, "x={x}: {rel} vs {first_order}");
        }
    }

    #[test]
    fn tail_bounds_dominate_tails() {
        for w in [
            WeightFunction::NuXi(mp(1.0, 0.4)),
            WeightFunction::NuXi(mp(0.1, 0.9)),
            WeightFunction::NuXi(mp(40.0, 0.5)),
            WeightFunction::Theta(PlancherelParams::new(3.0).unwrap()),
        ] {
            for n in [1u32, 5, 20] {
                let tail: f64 = (n + 1..n + 3000).map(|x| w.value(x).unwrap()).sum();
                let bound = w.tail_bound(n).unwrap();
                assert!(tail <= bound * (1.0 + 1e-12), "{w:?} n={n}: {tail} > {bound}");
            }
            let n = w.window(1e-14).unwrap();
            assert!(w.tail_bound(n).unwrap() < 1e-14);
        }
    }
}
