use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::kernels::{KernelFamily, KernelParams, KernelSpec};
use crate::partitions::{ModelParams, PlancherelParams};
use crate::{Error, Result};

/// Model parameters as entered on the command line. `nu` is never entered
/// directly; it is derived from `alpha`.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Deformation parameter `alpha > 0`.
    #[arg(long, conflicts_with = "theta", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Plancherel parameter `theta > 0`.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Mixing parameter `0 < xi < 1`.
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Flip the sign of the derived `nu`. Every kernel is invariant under it.
    #[arg(long)]
    pub negate_nu: bool,
}

impl ParamArgs {
    /// Kernel parameters for `family`, with the same domain checks as
    /// [`ModelParams`] and [`PlancherelParams`].
    pub fn resolve(&self, family: KernelFamily) -> Result<KernelParams> {
        let params = match family {
            KernelFamily::PlancherelBessel => {
                let theta = self.require_theta(family)?;
                self.forbid_xi(family)?;
                if self.negate_nu {
                    return Err(Error::invalid("--negate-nu does not apply to theta parameters"));
                }
                return Ok(KernelParams::Plancherel(PlancherelParams::new(theta)?));
            }
            KernelFamily::HyperSeries | KernelFamily::HyperIntegrable(_) | KernelFamily::HyperContour(_) => {
                let alpha = self.require_alpha(family)?;
                let xi = self
                    .xi
                    .ok_or_else(|| Error::invalid(format!("family {family} needs --xi")))?;
                KernelParams::Model(ModelParams::new(alpha, xi)?)
            }
            KernelFamily::GammaLimit | KernelFamily::MacdonaldWhittaker | KernelFamily::MacdonaldBessel => {
                let alpha = self.require_alpha(family)?;
                self.forbid_xi(family)?;
                KernelParams::alpha(alpha)?
            }
        };
        Ok(if self.negate_nu { params.with_negated_nu() } else { params })
    }

    pub fn spec(&self, family: KernelFamily) -> Result<KernelSpec> {
        KernelSpec::new(family, self.resolve(family)?)
    }

    fn require_alpha(&self, family: KernelFamily) -> Result<f64> {
        if self.theta.is_some() {
            return Err(Error::invalid(format!("family {family} takes --alpha, not --theta")));
        }
        self.alpha
            .ok_or_else(|| Error::invalid(format!("family {family} needs --alpha")))
    }

    fn require_theta(&self, family: KernelFamily) -> Result<f64> {
        if self.alpha.is_some() {
            return Err(Error::invalid(format!("family {family} takes --theta, not --alpha")));
        }
        self.theta
            .ok_or_else(|| Error::invalid(format!("family {family} needs --theta")))
    }

    fn forbid_xi(&self, family: KernelFamily) -> Result<()> {
        match self.xi {
            Some(_) => Err(Error::invalid(format!("family {family} does not take --xi"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Output format; inferred from the file extension, JSON otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self.output.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// Evaluation sites: positive integers or points of the half-line.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Grid {
    Lattice(Vec<u32>),
    Continuum(Vec<f64>),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Lattice(v) => v.len(),
            Grid::Continuum(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Grid::Lattice(v) => v[i].to_string(),
            Grid::Continuum(v) => v[i].to_string(),
        }
    }
}

const MAX_GRID: usize = 10_000;

/// `a..b` (inclusive) or a comma-separated list of positive integers.
pub fn parse_lattice_grid(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::invalid(format!("bad lattice grid '{s}' (expected a..b or a list)"));
    let sites: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if b < a || (b - a) as usize >= MAX_GRID {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if sites.is_empty() || sites.contains(&0) {
        return Err(Error::invalid(format!("lattice sites must be positive integers, got '{s}'")));
    }
    Ok(sites)
}

/// `start:stop:step` (inclusive of `stop` up to rounding) or a
/// comma-separated list of positive reals.
pub fn parse_continuum_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid(format!("bad continuum grid '{s}' (expected start:stop:step or a list)"));
    let parts: Vec<&str> = s.split(':').collect();
    let points: Vec<f64> = if parts.len() == 3 {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if n > MAX_GRID {
            return Err(bad());
        }
        // rounded so that 0.1:0.3:0.1 prints as 0.1, 0.2, 0.3
        (0..n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect()
    } else if parts.len() == 1 {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        return Err(bad());
    };
    if points.iter().any(|&u| !(u > 0.0) || !u.is_finite()) {
        return Err(Error::invalid(format!("continuum points must be positive, got '{s}'")));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_grids() {
        assert_eq!(parse_lattice_grid("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_lattice_grid("3, 1,7").unwrap(), vec![3, 1, 7]);
        assert!(parse_lattice_grid("0..3").is_err());
        assert!(parse_lattice_grid("5..2").is_err());
        assert!(parse_lattice_grid("a..b").is_err());
    }

    #[test]
    fn continuum_grids() {
        let g = parse_continuum_grid("0.1:5:0.1").unwrap();
        assert_eq!(g.len(), 50);
        assert_eq!(g[2], 0.3);
        assert_eq!(*g.last().unwrap(), 5.0);
        assert_eq!(parse_continuum_grid("0.5,2").unwrap(), vec![0.5, 2.0]);
        assert!(parse_continuum_grid("0:1:0.5").is_err());
        assert!(parse_continuum_grid("1:2").is_err());
    }

    #[test]
    fn format_inference() {
        let out = |p: &str, f| OutputArgs {
            output: Some(p.into()),
            format: f,
        };
        assert_eq!(out("a.csv", None).format(), Format::Csv);
        assert_eq!(out("a.json", None).format(), Format::Json);
        assert_eq!(out("a.csv", Some(Format::Json)).format(), Format::Json);
    }

    #[test]
    fn parameter_resolution() {
        let p = |alpha, theta, xi, negate_nu| ParamArgs {
            alpha,
            theta,
            xi,
            negate_nu,
        };
        let hyper = p(Some(1.0), None, Some(0.4), true).resolve(KernelFamily::HyperSeries).unwrap();
        assert!(matches!(hyper, KernelParams::Model(m) if m.nu_negated()));
        assert!(p(Some(1.0), None, Some(1.2), false).resolve(KernelFamily::HyperSeries).is_err());
        assert!(p(Some(1.0), None, None, false).resolve(KernelFamily::HyperSeries).is_err());
        assert!(p(None, Some(1.0), None, false).resolve(KernelFamily::HyperSeries).is_err());
        assert!(p(None, Some(1.0), None, false).resolve(KernelFamily::PlancherelBessel).is_ok());
        assert!(p(Some(0.0625), None, Some(0.5), false).resolve(KernelFamily::MacdonaldBessel).is_err());
        assert!(p(Some(0.25), None, None, false).spec(KernelFamily::GammaLimit).is_err());
    }
}
