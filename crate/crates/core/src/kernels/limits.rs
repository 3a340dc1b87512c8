//! The three limit transitions of the lattice kernel `K_{nu,xi}`, measured
//! as scans of the max-norm error along a sequence of `xi`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::continuum::{MacdonaldForm, MacdonaldKernel};
use super::gamma::GammaKernel;
use super::lattice::HyperKernel;
use super::plancherel::PlancherelKernel;
use crate::partitions::{nu_of_alpha, ModelParams, PlancherelParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    /// `xi -> 0` with `alpha xi = theta` fixed: `K_{nu,xi} -> K_theta`.
    Plancherel,
    /// `xi -> 1` with `alpha` fixed: `K_{nu,xi} -> K_gamma`.
    Gamma,
    /// `xi -> 1` on the scale `(1 - xi) x`: `(1 - xi)^-1 K_{nu,xi} -> K_nu`.
    Scaling,
}

impl LimitKind {
    pub const ALL: [LimitKind; 3] = [LimitKind::Plancherel, LimitKind::Gamma, LimitKind::Scaling];

    pub fn name(self) -> &'static str {
        match self {
            LimitKind::Plancherel => "plancherel",
            LimitKind::Gamma => "gamma",
            LimitKind::Scaling => "scaling",
        }
    }

    /// The `xi` sequence of the standard scan.
    pub fn default_xis(self) -> &'static [f64] {
        match self {
            LimitKind::Plancherel => &[1e-3, 1e-4, 1e-5],
            LimitKind::Gamma => &[0.9, 0.99, 0.999],
            LimitKind::Scaling => &[0.99, 0.999],
        }
    }
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::invalid(format!("unknown limit '{s}' (plancherel, gamma, scaling)")))
    }
}

/// Error of one scan step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint {
    pub xi: f64,
    pub alpha: f64,
    pub max_error: f64,
}

/// True when the errors strictly decrease along the scan.
pub fn is_decreasing(points: &[ScanPoint]) -> bool {
    points.windows(2).all(|w| w[1].max_error < w[0].max_error)
}

fn max_over_grid(n: u32, mut f: impl FnMut(u32, u32) -> Result<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in 1..=n {
        for y in x..=n {
            worst = worst.max(f(x, y)?);
        }
    }
    Ok(worst)
}

/// `max |K_{nu,xi} - K_theta|` on `{1..grid}^2` with `alpha = theta / xi`.
pub fn plancherel_scan(theta: PlancherelParams, xis: &[f64], grid: u32) -> Result<Vec<ScanPoint>> {
    let limit = PlancherelKernel::new(theta);
    xis.iter()
        .map(|&xi| {
            let alpha = theta.theta() / xi;
            let k = HyperKernel::new(ModelParams::new(alpha, xi)?)?;
            let max_error = max_over_grid(grid, |x, y| Ok((k.value(x, y)? - limit.value(x, y)?).abs()))?;
            Ok(ScanPoint { xi, alpha, max_error })
        })
        .collect()
}

/// `max |K_{nu,xi} - K_gamma|` on `{1..grid}^2` at fixed `alpha`.
pub fn gamma_scan(alpha: f64, xis: &[f64], grid: u32) -> Result<Vec<ScanPoint>> {
    let limit = GammaKernel::new(nu_of_alpha(alpha))?;
    xis.iter()
        .map(|&xi| {
            let k = HyperKernel::new(ModelParams::new(alpha, xi)?)?;
            let max_error = max_over_grid(grid, |x, y| Ok((k.value(x, y)? - limit.value(x, y)?).abs()))?;
            Ok(ScanPoint { xi, alpha, max_error })
        })
        .collect()
}

/// `max |(1 - xi)^-1 K_{nu,xi}(x, y) - K_nu(u, v)|` over `u, v` in `points`,
/// with `x = round(u / (1 - xi))`.
pub fn scaling_scan(alpha: f64, xis: &[f64], points: &[f64]) -> Result<Vec<ScanPoint>> {
    if points.iter().any(|&u| !(u > 0.0)) {
        return Err(Error::invalid("scaling-limit points must be positive"));
    }
    let limit = MacdonaldKernel::new(nu_of_alpha(alpha), MacdonaldForm::Bessel)?;
    xis.iter()
        .map(|&xi| {
            let k = HyperKernel::new(ModelParams::new(alpha, xi)?)?;
            let scale = 1.0 - xi;
            let site = |u: f64| ((u / scale).round() as u32).max(1);
            let mut max_error = 0.0f64;
            for (i, &u) in points.iter().enumerate() {
                for &v in &points[i..] {
                    let err = (k.value(site(u), site(v))? / scale - limit.value(u, v)?).abs();
                    max_error = max_error.max(err);
                }
            }
            Ok(ScanPoint { xi, alpha, max_error })
        })
        .collect()
}
