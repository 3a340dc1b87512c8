use num_complex::Complex64;

use super::gamma::ln_gamma_real;
use super::Order;
use crate::{Error, Result, TOLERANCES};

/// Bessel function of the first kind `J_order(z)` for `z >= 0` by the
/// ascending series `sum (-1)^k (z/2)^{order+2k} / (k! Gamma(order+k+1))`.
///
/// Any real order is accepted (terms at poles of `Gamma(order+k+1)` vanish);
/// negative non-integer orders are singular at `z = 0`.
pub fn bessel_j(order: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if order == 0.0 {
            1.0
        } else if order > 0.0 || order == order.round() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let ln_half = (0.5 * z).ln();
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let s = order + kf + 1.0;
        if !(s <= 0.0 && s == s.round()) {
            let (lg, sign) = signed_ln_gamma(s);
            let ln_term = (order + 2.0 * kf) * ln_half - ln_gamma_real(kf + 1.0).unwrap() - lg;
            let term = sign * if k.is_multiple_of(2) { 1.0 } else { -1.0 } * ln_term.exp();
            sum += term;
            if kf > 0.5 * z && s > 0.0 && term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        k += 1;
        if k > 10_000 {
            break;
        }
    }
    sum
}

fn signed_ln_gamma(x: f64) -> (f64, f64) {
    let lg = super::gamma::ln_gamma(Complex64::new(x, 0.0)).expect("pole excluded by caller");
    (lg.re, lg.im.cos().signum())
}

const MACDONALD_MIN_ARGUMENT: f64 = 1e-8;
const MACDONALD_MAX_NODES: usize = 1 << 16;

/// Macdonald function `K_order(u)` for complex order, from
/// `K_nu(u) = \int_0^\infty e^{-u cosh t} cosh(nu t) dt`.
///
/// The trapezoid rule on an even analytic integrand converges
/// geometrically; the step is halved until the value is stable. The range
/// is cut where the integrand envelope drops below `1e-18` of its peak.
pub fn macdonald_k_complex(order: Complex64, u: f64) -> Result<Complex64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("macdonald_k", format!("u = {u} must be positive")));
    }
    if u < MACDONALD_MIN_ARGUMENT {
        return Err(Error::domain(
            "macdonald_k",
            format!("u = {u} below the overflow guard {MACDONALD_MIN_ARGUMENT}"),
        ));
    }
    let p = order.re.abs();
    // log envelope -u (cosh t - 1) + p t, maximal where sinh t = p / u
    let envelope = |t: f64| -u * (t.cosh() - 1.0) + p * t;
    let t_peak = (p / u).asinh();
    let peak = envelope(t_peak);
    let cut = peak + TOLERANCES.quadrature_tail.ln();
    let mut upper = t_peak + 0.5;
    while envelope(upper) > cut {
        upper += 0.5;
    }
    let integrand = |t: f64| (order * t).cosh() * (-u * (t.cosh() - 1.0)).exp();

    let mut n = 64usize;
    let mut previous: Option<Complex64> = None;
    while n <= MACDONALD_MAX_NODES {
        let h = upper / n as f64;
        let mut sum = 0.5 * integrand(0.0);
        let mut scale = 0.5 * integrand(0.0).norm();
        for k in 1..n {
            let v = integrand(k as f64 * h);
            sum += v;
            scale += v.norm();
        }
        let value = sum * h;
        if let Some(prev) = previous {
            if (value - prev).norm() <= 1e-15 * (value.norm() + scale * h) {
                return Ok(value * (-u).exp());
            }
        }
        previous = Some(value);
        n *= 2;
    }
    Err(Error::NonConvergence {
        what: "macdonald_k",
        iterations: MACDONALD_MAX_NODES,
    })
}

/// `K_nu(u)` for real or purely imaginary order; the value is real.
pub fn macdonald_k(order: Order, u: f64) -> Result<f64> {
    Ok(macdonald_k_complex(order.to_complex(), u)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bessel_j_at_origin() {
        assert_eq!(bessel_j(0.0, 0.0), 1.0);
        assert_eq!(bessel_j(3.0, 0.0), 0.0);
    }

    #[test]
    fn bessel_j_recurrence_oracle() {
        // J_0 + J_2 = (2 * 1 / z) J_1 at z = 2
        let (j0, j1, j2) = (bessel_j(0.0, 2.0), bessel_j(1.0, 2.0), bessel_j(2.0, 2.0));
        assert!((j0 + j2 - j1).abs() < 1e-15);
        assert!((j1 - 0.576_724_807_756_873_4).abs() < 1e-15);
        // integer orders >= 2 through the three-term recurrence
        for n in 2..12 {
            let z = 3.1;
            let lhs = bessel_j(n as f64 - 1.0, z) + bessel_j(n as f64 + 1.0, z);
            let rhs = 2.0 * n as f64 / z * bessel_j(n as f64, z);
            assert!((lhs - rhs).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn bessel_j_half_order_closed_form() {
        let z: f64 = 1.3;
        let expected = (2.0 / (PI * z)).sqrt() * z.sin();
        assert!((bessel_j(0.5, z) - expected).abs() < 1e-15);
        // negative integer orders: J_{-n} = (-1)^n J_n
        assert!((bessel_j(-1.0, z) + bessel_j(1.0, z)).abs() < 1e-15);
    }

    #[test]
    fn macdonald_half_order_closed_form() {
        let v = macdonald_k(Order::Real(0.5), 2.0).unwrap();
        let closed = (PI / 4.0).sqrt() * (-2f64).exp();
        assert!((v - closed).abs() < 1e-15, "{v} vs {closed}");
        assert!((closed - 0.119_937_771_968_061_4).abs() < 1e-12);
    }

    #[test]
    fn macdonald_reference_values() {
        let k = macdonald_k(Order::Real(0.3), 1.0).unwrap();
        assert!((k - 0.435_076_024_208_802).abs() < 1e-14);
        let k = macdonald_k(Order::Imaginary(1.0), 3.0).unwrap();
        assert!((k - 0.030_008_658_928_584_47).abs() < 1e-15);
    }

    #[test]
    fn macdonald_even_in_order() {
        let a = macdonald_k(Order::Real(0.3), 1.0).unwrap();
        let b = macdonald_k(Order::Real(-0.3), 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn macdonald_guards() {
        assert!(macdonald_k(Order::Real(0.0), 0.0).is_err());
        assert!(macdonald_k(Order::Real(0.0), 1e-9).is_err());
    }

    #[test]
    fn macdonald_positive_on_grid() {
        for order in [Order::Real(0.0), Order::Real(0.3), Order::Real(1.25), Order::Imaginary(0.7)] {
            for u in [0.1, 0.5, 1.0, 2.5, 10.0, 40.0] {
                assert!(macdonald_k(order, u).unwrap() > 0.0, "{order:?} {u}");
            }
        }
    }

    #[test]
    fn macdonald_matches_plain_trapezoid_on_finer_grid() {
        // fixed fine trapezoid of the defining integral as a self-convergence oracle
        let (m, u): (f64, f64) = (1.0, 3.0);
        let h = 1.0 / 512.0;
        let mut sum = 0.5 * (-u).exp();
        for k in 1..(8 * 512) {
            let t = k as f64 * h;
            sum += (m * t).cos() * (-u * t.cosh()).exp();
        }
        let fine = sum * h;
        let v = macdonald_k(Order::Imaginary(m), u).unwrap();
        assert!((v - fine).abs() < 1e-11 * fine.abs(), "{v} vs {fine}");
    }
}
