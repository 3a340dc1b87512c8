use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::numerics::integrate_half_line;
use crate::{Error, Result};

const PSI_REL_TOL: f64 = 1e-13;

/// Tricomi confluent hypergeometric function `Psi(a, c; u)` (also `U(a, c, u)`)
/// from its Laplace-type integral, valid for `Re a > 0`:
///
/// `Psi(a, c; u) = Gamma(a)^-1 \int_0^\infty e^{-ut} t^{a-1} (1 + t)^{c-a-1} dt`.
pub fn tricomi_psi(a: Complex64, c: Complex64, u: f64) -> Result<Complex64> {
    if !(a.re > 0.0) {
        return Err(Error::domain("tricomi_psi", format!("Re a = {} must be positive", a.re)));
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("tricomi_psi", format!("u = {u} must be positive")));
    }
    // t = s / u: Psi = u^{-a} / Gamma(a) \int e^{-s} s^{a-1} (1 + s/u)^{c-a-1} ds
    let exponent = c - a - 1.0;
    let integral = integrate_half_line(
        |s, ln_s| {
            let log = -s + (a - 1.0) * ln_s + exponent * (s / u).ln_1p();
            log.exp()
        },
        PSI_REL_TOL,
    )?;
    let scale = (-a * u.ln() - ln_gamma(a)?).exp();
    let value = scale * integral;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::domain("tricomi_psi", "result not finite"));
    }
    Ok(value)
}

/// `Psi(a, c; u)` for any `a`, continuing the integral representation with
/// Kummer's transformation `Psi(a, c; u) = u^{1-c} Psi(a - c + 1, 2 - c; u)`
/// or, failing that, the contiguous recurrence in `a`
///
/// `Psi(a - 1) = (2a - c + u) Psi(a) - a (a - c + 1) Psi(a + 1)`.
pub fn tricomi_psi_continued(a: Complex64, c: Complex64, u: f64) -> Result<Complex64> {
    if a.re > 0.0 {
        return tricomi_psi(a, c, u);
    }
    if a == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let kummer = a - c + 1.0;
    if kummer.re > 0.0 {
        let factor = ((1.0 - c) * u.ln()).exp();
        return Ok(factor * tricomi_psi(kummer, 2.0 - c, u)?);
    }
    let steps = (-a.re).floor() as usize + 1;
    let top = a + steps as f64;
    let mut upper = tricomi_psi(top + 1.0, c, u)?;
    let mut current = tricomi_psi(top, c, u)?;
    let mut b = top;
    for _ in 0..steps {
        let lower = (2.0 * b - c + u) * current - b * (b - c + 1.0) * upper;
        upper = current;
        current = lower;
        b -= 1.0;
    }
    Ok(current)
}

/// Residual of the four-term relation between Tricomi functions that
/// links the Whittaker and Macdonald forms of the continuum kernel:
///
/// `Psi(-1/2-nu, 1-2nu) - (1/4-nu^2) Psi(3/2-nu, 1-2nu) - Psi(-1/2-nu, -1-2nu)
///  + (1+2nu) Psi(1/2-nu, 1-2nu)`, all at `u`.
pub fn psi_identity_residual(nu: Complex64, u: f64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let terms = [
        tricomi_psi_continued(-0.5 - nu, one - 2.0 * nu, u)?,
        -(0.25 - nu * nu) * tricomi_psi_continued(1.5 - nu, one - 2.0 * nu, u)?,
        -tricomi_psi_continued(-0.5 - nu, -one - 2.0 * nu, u)?,
        (1.0 + 2.0 * nu) * tricomi_psi_continued(0.5 - nu, one - 2.0 * nu, u)?,
    ];
    Ok(terms.iter().sum::<Complex64>().norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// e * E1(1) from the convergent series E1(x) = -gamma - ln x - sum (-x)^k / (k k!).
    fn e_times_e1_at_one() -> f64 {
        let euler_gamma = 0.577_215_664_901_532_9;
        let mut sum = 0.0;
        let mut fact = 1.0;
        for k in 1..40 {
            fact *= k as f64;
            sum += (-1f64).powi(k) / (k as f64 * fact);
        }
        std::f64::consts::E * (-euler_gamma - sum)
    }

    #[test]
    fn exponential_integral_oracle() {
        let v = tricomi_psi(r(1.0), r(1.0), 1.0).unwrap();
        let oracle = e_times_e1_at_one();
        assert!((v.re - oracle).abs() < 1e-12 * oracle, "{v} vs {oracle}");
        assert!((oracle - 0.596_347_362_323_194).abs() < 1e-12);
    }

    #[test]
    fn closed_form_c_equals_a_plus_one() {
        let v = tricomi_psi(r(0.5), r(1.5), 4.0).unwrap();
        assert!((v.re - 0.5).abs() < 1e-13);
    }

    #[test]
    fn reference_value_and_self_convergence() {
        let v = tricomi_psi(r(0.75), r(1.6), 2.0).unwrap();
        assert!((v.re - 0.570_539_477_978_073_7).abs() < 1e-12);
        // tighter quadrature tolerance moves the value by less than 1e-10
        let tight = integrate_half_line(
            |s, ln_s| (-s + (r(0.75) - 1.0) * ln_s + (r(1.6) - 0.75 - 1.0) * (s / 2.0).ln_1p()).exp(),
            1e-15,
        )
        .unwrap()
            * (-r(0.75) * 2f64.ln() - ln_gamma(r(0.75)).unwrap()).exp();
        assert!((v - tight).norm() < 1e-10);
    }

    #[test]
    fn domain_errors() {
        assert!(tricomi_psi(r(-0.5), r(1.0), 1.0).is_err());
        assert!(tricomi_psi(r(0.5), r(1.0), 0.0).is_err());
    }

    #[test]
    fn continuation_satisfies_recurrence() {
        let (a, c, u) = (Complex64::new(-1.3, 0.4), Complex64::new(2.1, 0.0), 1.7);
        let m = tricomi_psi_continued(a - 1.0, c, u).unwrap();
        let z = tricomi_psi_continued(a, c, u).unwrap();
        let p = tricomi_psi_continued(a + 1.0, c, u).unwrap();
        let residual = m + (c - 2.0 * a - u) * z + a * (a - c + 1.0) * p;
        assert!(residual.norm() < 1e-11 * z.norm().max(1.0));
        // Psi(-n, c; u) is a polynomial: Psi(-1, c; u) = u - c
        let poly = tricomi_psi_continued(r(-1.0), r(0.3), 2.0).unwrap();
        assert!((poly.re - 1.7).abs() < 1e-12, "{poly}");
    }

    #[test]
    fn four_term_identity() {
        for nu in [r(0.25), r(0.3), r(-0.2), Complex64::new(0.0, 0.7), r(0.0)] {
            for u in [0.2, 0.5, 2.0, 5.0] {
                let res = psi_identity_residual(nu, u).unwrap();
                assert!(res < 1e-8, "nu={nu} u={u}: {res}");
            }
        }
    }
}
