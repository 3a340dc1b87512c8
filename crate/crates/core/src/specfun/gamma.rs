use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

// Lanczos approximation with g = 671/128 and 15 coefficients.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos(z: Complex64) -> Complex64 {
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += *c / (z + (k + 1) as f64);
    }
    let t = z + LANCZOS_G;
    (z + 0.5) * t.ln() - t + LN_SQRT_2PI + ser.ln() - z.ln()
}

/// `ln sin(pi z)` computed without overflow for large `|Im z|`.
///
/// The imaginary part is some branch of `arg sin(pi z)`; only
/// `exp(ln_sin_pi(z))` is meaningful.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 1.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (-2i)
        -i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln() - (-2.0 * i).ln()
    } else {
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() - (2.0 * i).ln()
    }
}

/// Logarithm of the gamma function for complex argument.
///
/// For `Re z >= 1/2` the value is the principal branch continued from the
/// positive real axis; on the left half-plane the reflection formula is
/// used and the imaginary part is determined only modulo `2 pi`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("ln_gamma", format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: format!("{}", z.re),
        });
    }
    if z.re >= 0.5 {
        Ok(lanczos(z))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos(one_minus))
    }
}

/// `ln (Gamma(1/2 - nu + x) Gamma(1/2 + nu + x))` for real `x` where the
/// product is positive: `x > |nu| - 1/2` for real `nu`, any `x > -1/2` for
/// imaginary `nu` (the factors are then complex conjugates).
pub fn ln_gamma_pair(nu: super::Order, x: f64) -> Result<f64> {
    let nu = nu.to_complex();
    let sum = ln_gamma(0.5 - nu + x)? + ln_gamma(0.5 + nu + x)?;
    let two_pi = 2.0 * PI;
    let phase = sum.im - two_pi * (sum.im / two_pi).round();
    if phase.abs() > 1e-10 * sum.re.abs().max(1.0) {
        return Err(Error::NotReal {
            what: "gamma pair product",
            real: sum.re,
            imag: phase,
        });
    }
    Ok(sum.re)
}

/// `ln |Gamma(x)|` for real `x` that is not a non-positive integer.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

/// `Gamma(x)` for real argument.
pub fn gamma_real(x: f64) -> Result<f64> {
    let lg = ln_gamma(Complex64::new(x, 0.0))?;
    // the branch of the imaginary part encodes the sign (0 or pi mod 2pi)
    Ok(lg.re.exp() * lg.im.cos().signum())
}

/// `1 / Gamma(x)`, zero at the poles.
pub fn recip_gamma_real(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    let lg = ln_gamma(Complex64::new(x, 0.0)).expect("poles handled above");
    (-lg.re).exp() * lg.im.cos().signum()
}
