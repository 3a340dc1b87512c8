use num_complex::Complex64;

use crate::{Error, Result, TOLERANCES};

fn is_nonpositive_integer(c: Complex64) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real `z <= 0`.
///
/// The argument is first mapped into `[0, 1)` with the Pfaff transformation
/// `2F1(a, b; c; z) = (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1))`, applied
/// on the parameter with the smaller real part (this also makes the result
/// exactly symmetric in `a` and `b`). The transformed power series is summed
/// until a geometric tail bound drops below `1e-16` of the partial sum.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole {
            function: "gauss_2f1",
            at: format!("c = {}", c.re),
        });
    }
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::domain("gauss_2f1", format!("z = {z} must be <= 0")));
    }
    if z == 0.0 || a == Complex64::new(0.0, 0.0) || b == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (p, q) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
    let w = z / (z - 1.0);
    let prefactor = (-p * (1.0 - z).ln()).exp();
    Ok(prefactor * power_series(p, c - q, c, w)?)
}

/// Sum of the hypergeometric power series at `0 <= w < 1`.
fn power_series(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    let tol = TOLERANCES.hypergeometric_tail;
    let max_terms = TOLERANCES.hypergeometric_max_terms;
    // beyond this index the term ratio is monotone in k
    let settle = (a.norm() + b.norm() + c.norm()).ceil() as usize + 2;

    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..max_terms {
        let kf = k as f64;
        let next = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * w;
        if next == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        sum += next;
        if k >= settle {
            let ratio = next.norm() / term.norm();
            let bound = ratio.max(w);
            if bound < 1.0 && next.norm() * bound / (1.0 - bound) < tol * sum.norm() {
                return Ok(sum);
            }
        }
        term = next;
    }
    Err(Error::NonConvergence {
        what: "gauss_2f1 power series",
        iterations: max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Untransformed series, valid for |z| < 1.
    fn raw_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Complex64 {
        let mut sum = r(1.0);
        let mut term = r(1.0);
        for k in 0..100_000 {
            let kf = k as f64;
            term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
            sum += term;
            if term.norm() < 1e-20 * sum.norm() && k > 10 {
                break;
            }
        }
        sum
    }

    #[test]
    fn zero_parameter_truncates() {
        let v = gauss_2f1(r(0.0), r(2.3), r(1.7), -1.0).unwrap();
        assert_eq!(v, r(1.0));
    }

    #[test]
    fn binomial_reduction() {
        // 2F1(a, b; b; z) = (1 - z)^{-a}
        let v = gauss_2f1(r(1.0), r(1.0), r(1.0), -0.5).unwrap();
        assert!((v - r(2.0 / 3.0)).norm() < 1e-15);
        let v = gauss_2f1(r(0.7), r(2.5), r(2.5), -3.0).unwrap();
        assert!((v.re - 4f64.powf(-0.7)).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_raw_series_inside_unit_disk() {
        let nu = 0.3;
        let (xi, x) = (0.4, 2.0);
        let z = xi / (xi - 1.0);
        let (a, b, c) = (r(-0.5 - nu + 1.0), r(-0.5 + nu + 1.0), r(x + 1.0));
        let got = gauss_2f1(a, b, c, z).unwrap();
        let oracle = raw_series(a, b, c, z);
        assert!((got - oracle).norm() < 1e-12, "{got} vs {oracle}");
        assert!((got.re - 0.969_522_995_086_402_9).abs() < 1e-14);
    }

    #[test]
    fn conjugate_parameters_give_real_values() {
        let nu = Complex64::new(0.0, 1.3);
        let v = gauss_2f1(0.5 - nu, 0.5 + nu, r(3.0), -2.5).unwrap();
        assert!(v.im.abs() < 1e-13 * v.re.abs());
    }

    #[test]
    fn argument_close_to_one_after_transformation() {
        // z = -999 maps to w = 0.999; compare against a Euler-transformed
        // evaluation 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)
        let (a, b, c) = (r(-0.8), r(0.3), r(6.0));
        let z = -999.0;
        let direct = gauss_2f1(a, b, c, z).unwrap();
        let euler = (1.0 - z).powf((c - a - b).re) * gauss_2f1(c - a, c - b, c, z).unwrap();
        assert!((direct - euler).norm() < 1e-11 * direct.norm(), "{direct} {euler}");
    }

    #[test]
    fn errors() {
        assert!(matches!(gauss_2f1(r(1.0), r(1.0), r(-2.0), -0.5), Err(Error::Pole { .. })));
        assert!(matches!(gauss_2f1(r(1.0), r(1.0), r(1.0), 0.5), Err(Error::Domain { .. })));
    }

    proptest::proptest! {
        #[test]
        fn symmetric_in_first_two_parameters(
            a in -3.0f64..3.0, b in -3.0f64..3.0, bi in -1.0f64..1.0,
            c in 0.5f64..6.0, z in -5.0f64..0.0,
        ) {
            let a = Complex64::new(a, 0.0);
            let b = Complex64::new(b, bi);
            let c = Complex64::new(c, 0.0);
            let ab = gauss_2f1(a, b, c, z).unwrap();
            let ba = gauss_2f1(b, a, c, z).unwrap();
            proptest::prop_assert!((ab - ba).norm() < 1e-14 * ab.norm().max(1.0));
        }
    }
}
