use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::{Error, Result, TOLERANCES};

/// A positively oriented circle sampled at equispaced nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleContour {
    pub center: Complex64,
    pub radius: f64,
    /// Initial node count; doubled during refinement.
    pub nodes: usize,
}

impl CircleContour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("contour radius {radius} must be positive")));
        }
        if nodes < 16 || !nodes.is_power_of_two() {
            return Err(Error::invalid(format!(
                "contour node count {nodes} must be a power of two >= 16"
            )));
        }
        Ok(Self {
            center,
            radius,
            nodes,
        })
    }

    /// Nodes `w_k` together with the normalized weights `(w_k - center) / n`,
    /// so that `sum f(w_k) weight_k` approximates `(2 pi i)^-1 \oint f(w) dw`.
    pub fn nodes_and_weights(&self, n: usize) -> Vec<(Complex64, Complex64)> {
        (0..n)
            .map(|k| {
                let offset = Complex64::from_polar(self.radius, 2.0 * PI * k as f64 / n as f64);
                (self.center + offset, offset / n as f64)
            })
            .collect()
    }
}

/// `(2 pi i)^-1 \oint f(w) dw` by the periodic trapezoid rule.
///
/// Nodes are doubled until two successive estimates agree to `1e-9`
/// relative (measured against the mean modulus of the integrand when the
/// integral itself vanishes).
pub fn circle_integral<F>(f: F, contour: &CircleContour) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let cap = TOLERANCES.circle_node_cap;
    let mut n = contour.nodes;
    let mut previous: Option<Complex64> = None;
    while n <= cap {
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (w, weight) in contour.nodes_and_weights(n) {
            let term = f(w) * weight;
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(Error::domain("circle_integral", format!("integrand not finite at {w}")));
            }
            value += term;
            scale += term.norm();
        }
        if let Some(prev) = previous {
            if (value - prev).norm() <= TOLERANCES.circle_rel * value.norm().max(scale) {
                return Ok(value);
            }
        }
        previous = Some(value);
        n *= 2;
    }
    Err(Error::NonConvergence {
        what: "circle_integral",
        iterations: cap,
    })
}

/// `(2 pi i)^-2 \oint\oint f1(w1) f2(w2) coupling(w1, w2) dw1 dw2`.
///
/// The separable factors are tabulated once per refinement level; only the
/// coupling is evaluated on the full tensor grid.
pub fn double_circle_integral<F1, F2, G>(
    f1: F1,
    f2: F2,
    coupling: G,
    first: &CircleContour,
    second: &CircleContour,
) -> Result<Complex64>
where
    F1: Fn(Complex64) -> Complex64,
    F2: Fn(Complex64) -> Complex64,
    G: Fn(Complex64, Complex64) -> Complex64,
{
    let cap = TOLERANCES.double_circle_node_cap;
    let mut n = first.nodes.max(second.nodes);
    let mut previous: Option<Complex64> = None;
    while n <= cap {
        let a: Vec<(Complex64, Complex64)> = first
            .nodes_and_weights(n)
            .into_iter()
            .map(|(w, wt)| (w, f1(w) * wt))
            .collect();
        let b: Vec<(Complex64, Complex64)> = second
            .nodes_and_weights(n)
            .into_iter()
            .map(|(w, wt)| (w, f2(w) * wt))
            .collect();
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for &(w1, v1) in &a {
            let mut inner = Complex64::new(0.0, 0.0);
            for &(w2, v2) in &b {
                inner += coupling(w1, w2) * v2;
            }
            let term = v1 * inner;
            value += term;
            scale += term.norm();
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::domain("double_circle_integral", "integrand not finite"));
        }
        if let Some(prev) = previous {
            if (value - prev).norm() <= TOLERANCES.circle_rel * value.norm().max(scale) {
                return Ok(value);
            }
        }
        previous = Some(value);
        n *= 2;
    }
    Err(Error::NonConvergence {
        what: "double_circle_integral",
        iterations: cap,
    })
}

const HALF_LINE_START_STEP: f64 = 0.5;
const HALF_LINE_MAX_LEVELS: usize = 10;
const LN_S_LIMIT: f64 = 700.0;
const HALF_LINE_ROUNDING: f64 = 1e-15;

/// `\int_0^\infty f ds` by exp-sinh quadrature, `s = exp(pi/2 sinh t)`.
///
/// Refinement stops when successive estimates agree to `rel_tol` relative,
/// plus a rounding floor of `1e-15` times the integral of `|f|`.
///
/// The integrand receives both `s` and `ln s` so that algebraic factors
/// `s^a` can be formed in log space; `s` itself may underflow to zero near
/// the left end. Integrable singularities at `0` and exponential decay at
/// infinity are handled without further splitting.
pub fn integrate_half_line<F>(f: F, rel_tol: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let tail = TOLERANCES.quadrature_tail;
    let node = |t: f64| -> Option<Complex64> {
        let ln_s = FRAC_PI_2 * t.sinh();
        if ln_s.abs() > LN_S_LIMIT {
            return None;
        }
        let s = ln_s.exp();
        let jac = s * FRAC_PI_2 * t.cosh();
        Some(f(s, ln_s) * jac)
    };

    let mut previous: Option<Complex64> = None;
    for level in 0..HALF_LINE_MAX_LEVELS {
        let h = HALF_LINE_START_STEP / (1u64 << level) as f64;
        let mut sum = node(0.0).unwrap_or_default();
        let mut l1 = sum.norm();
        for direction in [1.0, -1.0] {
            let mut small_run = 0;
            let mut k = 1;
            while let Some(term) = node(direction * k as f64 * h) {
                if !term.re.is_finite() || !term.im.is_finite() {
                    return Err(Error::domain(
                        "integrate_half_line",
                        format!("integrand not finite at t = {}", direction * k as f64 * h),
                    ));
                }
                sum += term;
                l1 += term.norm();
                if term.norm() <= tail * sum.norm() {
                    small_run += 1;
                    if small_run >= 3 {
                        break;
                    }
                } else {
                    small_run = 0;
                }
                k += 1;
            }
        }
        let estimate = sum * h;
        // rounding floor for oscillatory integrands whose value is much
        // smaller than the integral of their modulus
        let floor = HALF_LINE_ROUNDING * l1 * h;
        if let Some(prev) = previous {
            if (estimate - prev).norm() <= rel_tol * estimate.norm() + floor {
                return Ok(estimate);
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence {
        what: "integrate_half_line",
        iterations: HALF_LINE_MAX_LEVELS,
    })
}

/// Real-valued convenience wrapper around [`integrate_half_line`].
pub fn integrate_half_line_real<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_half_line(|s, _| Complex64::new(f(s), 0.0), rel_tol).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> CircleContour {
        CircleContour::new(Complex64::new(0.0, 0.0), 1.0, n).unwrap()
    }

    #[test]
    fn residues() {
        let one = circle_integral(|w| 1.0 / w, &unit(16)).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
        let zero = circle_integral(|w| w, &unit(16)).unwrap();
        assert!(zero.norm() < 1e-14);
        let pole = Complex64::new(0.3, 0.0);
        let inside = circle_integral(|w| 1.0 / (w - pole), &unit(16)).unwrap();
        assert!((inside - 1.0).norm() < 1e-9);
        let small = CircleContour::new(Complex64::new(0.0, 0.0), 0.2, 16).unwrap();
        let outside = circle_integral(|w| 1.0 / (w - pole), &small).unwrap();
        assert!(outside.norm() < 1e-9);
    }

    #[test]
    fn polynomials_integrate_to_zero() {
        let c = CircleContour::new(Complex64::new(0.0, 0.0), 1.7, 32).unwrap();
        let v = circle_integral(|w| 3.0 * w * w * w - w * w + 2.0 * w + 5.0, &c).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn contour_validation() {
        assert!(CircleContour::new(Complex64::default(), 1.0, 24).is_err());
        assert!(CircleContour::new(Complex64::default(), 1.0, 8).is_err());
        assert!(CircleContour::new(Complex64::default(), -1.0, 16).is_err());
    }

    #[test]
    fn double_integral_of_product() {
        // residue of 1/(w1 w2) with coupling 1/(1 - w1 w2 / 4) = sum (w1 w2/4)^k
        let c = unit(16);
        let v = double_circle_integral(
            |w| 1.0 / (w * w),
            |w| 1.0 / (w * w),
            |a, b| 1.0 / (1.0 - a * b / 4.0),
            &c,
            &c,
        )
        .unwrap();
        assert!((v - 0.25).norm() < 1e-10, "{v}");
    }

    #[test]
    fn half_line_gamma_integrals() {
        // Gamma(1/2) = int s^{-1/2} e^{-s}
        let v = integrate_half_line(|s, ln_s| Complex64::new((-0.5 * ln_s).exp() * (-s).exp(), 0.0), 1e-13)
            .unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let v = integrate_half_line_real(|s| 1.0 / (1.0 + s * s), 1e-12).unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-11);
    }
}
