use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::{ln_gauge, ln_xi_factor, HypergeometricBasis};
use super::{lattice_step, symmetric_lattice_matrix};
use crate::numerics::{circle_integral, double_circle_integral, richardson_limit, CircleContour, TruncatedOperator};
use crate::partitions::ModelParams;
use crate::specfun::{ensure_real, ln_gamma_pair, ln_gamma_real, Order};
use crate::{Error, Result, TOLERANCES};

/// Which `A` enters the integrable form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegrableVariant {
    /// `A(x) = x (2 phi_0(x) - phi_1(x))`.
    A1,
    /// `A(x) = x / (1 + xi) (2 phi~(x) - (1 - xi) phi_1(x))`.
    A2,
}

/// The two double-contour-integral forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContourForm {
    /// Gauge `g(y)/g(x)`, integrand with `1/(w1 w2 - 1)` plus a separable term.
    First,
    /// Gauge `g(-x)/g(-y)`, integrand with `(w1 w2 + 1)/(w1 w2 - 1)`.
    Second,
}

const CONTOUR_START_NODES: usize = 64;

/// The correlation kernel `K_{nu,xi}` of the two-parameter family in its
/// hypergeometric representations.
#[derive(Debug, Clone)]
pub struct HyperKernel {
    basis: HypergeometricBasis,
    nu: Order,
    xi: f64,
    ln_cos: f64,
}

impl HyperKernel {
    pub fn new(params: ModelParams) -> Result<Self> {
        let nu = params.nu();
        Ok(Self {
            basis: HypergeometricBasis::new(params),
            nu,
            xi: params.xi(),
            ln_cos: nu.ln_cos_pi()?,
        })
    }

    pub fn params(&self) -> ModelParams {
        self.basis.params()
    }

    pub fn basis(&self) -> &HypergeometricBasis {
        &self.basis
    }

    /// Series representation: `2 Xi(x,y) sqrt(xy)/(x+y)` times
    /// `sum_j xi^{j+(x+y)/2} (1-xi)^{-2j} phi_{j+1}(x) phi_{j+1}(y)
    ///  / (2^{delta_j0} (x+j)! (y+j)! Gamma(1/2-nu-j) Gamma(1/2+nu-j))`.
    ///
    /// The reciprocal gamma pair is rewritten by reflection as
    /// `Gamma(1/2+nu+j) Gamma(1/2-nu+j) cos^2(pi nu) / pi^2`, which is
    /// positive, and every term is formed in log space.
    pub fn series(&self, x: u32, y: u32) -> Result<f64> {
        if x == 0 || y == 0 {
            return Err(Error::domain("k_hyper_series", "sites start at 1"));
        }
        let (xf, yf) = (x as f64, y as f64);
        let ln_pref = LN_2 + ln_xi_factor(self.nu, xf, yf)? + 0.5 * (xf * yf).ln() - (xf + yf).ln()
            + 2.0 * self.ln_cos
            - 2.0 * PI.ln();
        let (ln_xi, ln_one_minus) = (self.xi.ln(), (-self.xi).ln_1p());
        let mut sum = 0.0;
        let mut previous = f64::INFINITY;
        let mut decreasing = 0;
        for j in 0..TOLERANCES.kernel_series_max_terms as u32 {
            let jf = j as f64;
            let px = self.basis.phi(j + 1, x)?;
            let py = self.basis.phi(j + 1, y)?;
            let product = px * py;
            let mut ln_term = (jf + 0.5 * (xf + yf)) * ln_xi - 2.0 * jf * ln_one_minus + product.abs().ln()
                - ln_gamma_real(xf + jf + 1.0)?
                - ln_gamma_real(yf + jf + 1.0)?
                + ln_gamma_pair(self.nu, jf)?;
            if j == 0 {
                ln_term -= LN_2;
            }
            let term = product.signum() * (ln_pref + ln_term).exp();
            sum += term;
            let size = term.abs();
            decreasing = if size < previous { decreasing + 1 } else { 0 };
            previous = size;
            if j > 0 && decreasing >= 3 && size <= TOLERANCES.kernel_series_tail * sum.abs() {
                return Ok(sum);
            }
        }
        Err(Error::NonConvergence {
            what: "k_hyper_series",
            iterations: TOLERANCES.kernel_series_max_terms,
        })
    }

    fn ln_integrable_prefactor(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.ln_cos - PI.ln() + 0.5 * (x + y) * self.xi.ln() + ln_xi_factor(self.nu, x, y)?
            - 0.5 * (ln_gamma_real(x + 1.0)? + ln_gamma_real(y + 1.0)? + ln_gamma_real(x)? + ln_gamma_real(y)?))
    }

    fn a_of(&self, x: f64, phi0: f64, phi1: f64, variant: IntegrableVariant) -> Result<Complex64> {
        Ok(match variant {
            IntegrableVariant::A1 => Complex64::new(x * (2.0 * phi0 - phi1), 0.0),
            IntegrableVariant::A2 => {
                x / (1.0 + self.xi) * (2.0 * self.basis.phi_tilde(x)? - (1.0 - self.xi) * phi1)
            }
        })
    }

    fn integrable_from(
        &self,
        (x, phi0x, phi1x): (f64, f64, f64),
        (y, phi0y, phi1y): (f64, f64, f64),
        variant: IntegrableVariant,
    ) -> Result<f64> {
        let ax = self.a_of(x, phi0x, phi1x, variant)?;
        let ay = self.a_of(y, phi0y, phi1y, variant)?;
        let (first, second) = (ax * phi1y, ay * phi1x);
        let pref = self.ln_integrable_prefactor(x, y)?.exp() / (x * x - y * y);
        let value = pref * (first - second);
        ensure_real(
            "k_hyper_integrable",
            value,
            TOLERANCES.realness,
            1.0 + value.re.abs() + pref.abs() * (first.norm() + second.norm()) * 1e-6,
        )
    }

    /// Integrable form at real `x != y`, used for Richardson limits on the
    /// diagonal.
    pub fn integrable_real(&self, x: f64, y: f64, variant: IntegrableVariant) -> Result<f64> {
        let b = &self.basis;
        self.integrable_from(
            (x, b.phi_real(0, x)?, b.phi_real(1, x)?),
            (y, b.phi_real(0, y)?, b.phi_real(1, y)?),
            variant,
        )
    }

    /// Integrable form
    /// `cos(pi nu)/pi xi^{(x+y)/2} Xi(x,y) / sqrt(x! y! (x-1)! (y-1)!)
    ///  (A(x) B(y) - B(x) A(y)) / (x^2 - y^2)` with `B = phi_1`.
    /// On the diagonal the value comes from [`HyperKernel::diagonal`].
    pub fn integrable(&self, x: u32, y: u32, variant: IntegrableVariant) -> Result<f64> {
        if x == 0 || y == 0 {
            return Err(Error::domain("k_hyper_integrable", "sites start at 1"));
        }
        if x == y {
            return self.diagonal(x);
        }
        let b = &self.basis;
        self.integrable_from(
            (x as f64, b.phi(0, x)?, b.phi(1, x)?),
            (y as f64, b.phi(0, y)?, b.phi(1, y)?),
            variant,
        )
    }

    /// `K(x, x)`: the series for `xi <= 0.95`, otherwise the Richardson
    /// limit of the integrable form along `(x + h, x - h)`.
    pub fn diagonal(&self, x: u32) -> Result<f64> {
        if self.xi <= TOLERANCES.series_diagonal_xi_max {
            return self.series(x, x);
        }
        let xf = x as f64;
        richardson_limit(
            |h| self.integrable_real(xf + h, xf - h, IntegrableVariant::A1),
            lattice_step(xf),
        )
    }

    /// `K(x, y)`: integrable form off the diagonal, [`HyperKernel::diagonal`] on it.
    pub fn value(&self, x: u32, y: u32) -> Result<f64> {
        self.integrable(x, y, IntegrableVariant::A1)
    }

    /// `K` restricted to `1..=n`.
    pub fn matrix(&self, n: usize) -> Result<TruncatedOperator> {
        symmetric_lattice_matrix(n, |x, y| self.value(x, y))
    }

    /// Double contour integral forms on circles of radius `xi^{-1/4}`.
    pub fn contour(&self, x: u32, y: u32, form: ContourForm) -> Result<f64> {
        if x == 0 || y == 0 {
            return Err(Error::domain("k_hyper_contour", "sites start at 1"));
        }
        let sqrt_xi = self.xi.sqrt();
        let radius = self.xi.powf(-0.25);
        // both |w sqrt(xi)| and |sqrt(xi) / w| equal xi^{1/4} < 1 on the circle,
        // so the principal powers below are single valued
        debug_assert!(radius * sqrt_xi < 1.0 && sqrt_xi / radius < 1.0);
        let circle = CircleContour::new(Complex64::new(0.0, 0.0), radius, CONTOUR_START_NODES)?;
        let nu = self.nu.to_complex();
        let (xf, yf) = (x as f64, y as f64);
        let root = (xf * yf).sqrt() / (xf + yf);
        let power = |w: Complex64, a: Complex64, b: Complex64| {
            (a * (1.0 - w * sqrt_xi).ln() + b * (1.0 - sqrt_xi / w).ln()).exp()
        };
        let value = match form {
            ContourForm::First => {
                let i1 = double_circle_integral(
                    |w| power(w, nu - 0.5, nu + 0.5) * w.powi(-(x as i32)),
                    |w| power(w, -nu - 0.5, 0.5 - nu) * w.powi(-(y as i32)),
                    |w1, w2| 1.0 / (w1 * w2 - 1.0),
                    &circle,
                    &circle,
                )?;
                let i2x = circle_integral(|w| power(w, nu - 0.5, nu - 0.5) * w.powi(-(x as i32) - 1), &circle)?;
                let i2y = circle_integral(|w| power(w, -nu - 0.5, -nu - 0.5) * w.powi(-(y as i32) - 1), &circle)?;
                let gauge = (ln_gauge(self.nu, yf)? - ln_gauge(self.nu, xf)?).exp();
                gauge * (2.0 * root * i1 - root * (1.0 - self.xi) * i2x * i2y)
            }
            ContourForm::Second => {
                let i = double_circle_integral(
                    |w| power(w, nu - 0.5 + xf, nu - 0.5 - xf) * w.powi(-(x as i32) - 1),
                    |w| power(w, -nu - 0.5 + yf, -nu - 0.5 - yf) * w.powi(-(y as i32) - 1),
                    |w1, w2| {
                        let p = w1 * w2;
                        (p + 1.0) / (p - 1.0)
                    },
                    &circle,
                    &circle,
                )?;
                let gauge = (ln_gauge(self.nu, -xf)? - ln_gauge(self.nu, -yf)?).exp();
                gauge * root * (1.0 - self.xi) * i
            }
        };
        ensure_real("k_hyper_contour", value, TOLERANCES.contour_realness, 1.0 + value.re.abs())
    }
}

pub fn k_hyper_series(x: u32, y: u32, params: ModelParams) -> Result<f64> {
    HyperKernel::new(params)?.series(x, y)
}

pub fn k_hyper_integrable(x: u32, y: u32, params: ModelParams, variant: IntegrableVariant) -> Result<f64> {
    HyperKernel::new(params)?.integrable(x, y, variant)
}

pub fn k_hyper_contour(x: u32, y: u32, params: ModelParams, form: ContourForm) -> Result<f64> {
    HyperKernel::new(params)?.contour(x, y, form)
}

pub fn hypergeometric_identity_residual(x: u32, params: ModelParams) -> Result<f64> {
    HypergeometricBasis::new(params).identity_residual(x as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel(alpha: f64, xi: f64) -> HyperKernel {
        HyperKernel::new(ModelParams::new(alpha, xi).unwrap()).unwrap()
    }

    #[test]
    fn reference_values() {
        // 30-digit evaluations of both forms
        let cases = [
            (1.0, 0.4, 1, 2, 0.080_326_677_456_662_8),
            (1.0, 0.4, 2, 5, 0.008_075_297_554_539_75),
            (1.0, 0.4, 1, 1, 0.157_244_985_366_455),
            (0.2, 0.3, 1, 2, 0.011_088_472_292_118_9),
            (0.2, 0.3, 1, 1, 0.028_975_622_072_444_7),
            (2.0, 0.5, 1, 2, 0.172_321_562_660_46),
            (2.0, 0.5, 1, 1, 0.273_092_168_107_071),
        ];
        for (alpha, xi, x, y, expected) in cases {
            let k = kernel(alpha, xi);
            let s = k.series(x, y).unwrap();
            assert!((s - expected).abs() < 1e-12, "series {alpha} {xi} ({x},{y}): {s}");
            if x != y {
                let a = k.integrable(x, y, IntegrableVariant::A1).unwrap();
                assert!((a - expected).abs() < 1e-12, "A1 {alpha} {xi} ({x},{y}): {a}");
            }
        }
    }

    #[test]
    fn integrable_variants_agree() {
        // real and imaginary nu
        for (alpha, xi) in [(0.5, 0.3), (2.0, 0.5), (6.0, 0.8)] {
            let k = kernel(alpha, xi);
            let a1 = k.integrable(2, 5, IntegrableVariant::A1).unwrap();
            let a2 = k.integrable(2, 5, IntegrableVariant::A2).unwrap();
            assert!((a1 - a2).abs() < 1e-10 * a1.abs().max(1e-3), "{alpha}: {a1} {a2}");
        }
    }

    #[test]
    fn symmetric_and_sign_of_nu_invariant() {
        let p = ModelParams::new(0.2, 0.4).unwrap();
        let k = HyperKernel::new(p).unwrap();
        let flipped = HyperKernel::new(p.with_negated_nu()).unwrap();
        for (x, y) in [(3, 4), (1, 7), (5, 2)] {
            let a = k.series(x, y).unwrap();
            assert!((a - k.series(y, x).unwrap()).abs() < 1e-15);
            assert!((a - flipped.series(x, y).unwrap()).abs() < 1e-12);
            let b = k.integrable(x, y, IntegrableVariant::A1).unwrap();
            assert!((b - flipped.integrable(x, y, IntegrableVariant::A1).unwrap()).abs() < 1e-12);
            assert!((b - k.integrable(y, x, IntegrableVariant::A1).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn contour_forms_match_series() {
        let k = kernel(1.0, 0.25);
        let c = k.contour(1, 1, ContourForm::First).unwrap();
        assert!((c - 0.108_706_926_746).abs() < 1e-10, "{c}");
        assert!((c - k.series(1, 1).unwrap()).abs() < 1e-6);
        let k = kernel(0.5, 0.4);
        let c1 = k.contour(2, 3, ContourForm::First).unwrap();
        let c2 = k.contour(2, 3, ContourForm::Second).unwrap();
        assert!((c1 - c2).abs() < 1e-6, "{c1} {c2}");
        assert!((c1 - 0.011_783_390_133_5).abs() < 1e-10);
    }

    #[test]
    fn richardson_diagonal_matches_series() {
        let k = kernel(1.0, 0.4);
        for x in [1u32, 3, 8] {
            let xf = x as f64;
            let r = richardson_limit(|h| k.integrable_real(xf + h, xf - h, IntegrableVariant::A1), lattice_step(xf)).unwrap();
            let s = k.series(x, x).unwrap();
            assert!((r - s).abs() < 1e-10 * s, "x={x}: {r} vs {s}");
        }
    }
}
