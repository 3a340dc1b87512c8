use num_complex::Complex64;

use super::tricomi::tricomi_psi_continued;
use super::{ensure_real, Order};
use crate::{Error, Result, TOLERANCES};

/// `W_{kappa, mu}(u) = e^{-u/2} u^{mu + 1/2} Psi(mu - kappa + 1/2, 1 + 2 mu; u)`
/// in complex arithmetic. `W` is even in `mu`; the representative with
/// non-negative real part is used.
pub fn whittaker_w_complex(kappa: i32, mu: Complex64, u: f64) -> Result<Complex64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("whittaker_w", format!("u = {u} must be positive")));
    }
    let mu = if mu.re < 0.0 { -mu } else { mu };
    let psi = tricomi_psi_continued(mu - kappa as f64 + 0.5, 1.0 + 2.0 * mu, u)?;
    let prefactor = (-0.5 * u + (mu + 0.5) * u.ln()).exp();
    Ok(prefactor * psi)
}

/// Whittaker `W_{kappa, mu}(u)` for `kappa` in `{0, 1}` and real or purely
/// imaginary `mu`; the result is real.
pub fn whittaker_w(kappa: i32, mu: Order, u: f64) -> Result<f64> {
    if !(kappa == 0 || kappa == 1) {
        return Err(Error::domain("whittaker_w", format!("kappa = {kappa} not in {{0, 1}}")));
    }
    let value = whittaker_w_complex(kappa, mu.to_complex(), u)?;
    ensure_real("whittaker_w", value, TOLERANCES.realness, value.norm())
}
