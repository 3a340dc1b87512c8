use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::continuum::{MacdonaldForm, MacdonaldKernel};
use super::gamma::GammaKernel;
use super::lattice::{ContourForm, HyperKernel, IntegrableVariant};
use super::plancherel::PlancherelKernel;
use super::symmetric_lattice_matrix;
use crate::numerics::TruncatedOperator;
use crate::partitions::{nu_of_alpha, ModelParams, PlancherelParams};
use crate::specfun::Order;
use crate::{Error, Result};

/// Every kernel representation the crate can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelFamily {
    HyperSeries,
    HyperIntegrable(IntegrableVariant),
    HyperContour(ContourForm),
    PlancherelBessel,
    GammaLimit,
    MacdonaldWhittaker,
    MacdonaldBessel,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 9] = [
        KernelFamily::HyperSeries,
        KernelFamily::HyperIntegrable(IntegrableVariant::A1),
        KernelFamily::HyperIntegrable(IntegrableVariant::A2),
        KernelFamily::HyperContour(ContourForm::First),
        KernelFamily::HyperContour(ContourForm::Second),
        KernelFamily::PlancherelBessel,
        KernelFamily::GammaLimit,
        KernelFamily::MacdonaldWhittaker,
        KernelFamily::MacdonaldBessel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::HyperSeries => "hyper-series",
            KernelFamily::HyperIntegrable(IntegrableVariant::A1) => "hyper-integrable-a1",
            KernelFamily::HyperIntegrable(IntegrableVariant::A2) => "hyper-integrable-a2",
            KernelFamily::HyperContour(ContourForm::First) => "hyper-contour-1",
            KernelFamily::HyperContour(ContourForm::Second) => "hyper-contour-2",
            KernelFamily::PlancherelBessel => "plancherel-bessel",
            KernelFamily::GammaLimit => "gamma",
            KernelFamily::MacdonaldWhittaker => "macdonald-whittaker",
            KernelFamily::MacdonaldBessel => "macdonald-bessel",
        }
    }

    /// Lattice kernels live on `{1, 2, ...}`; the Macdonald kernels on the half-line.
    pub fn is_lattice(self) -> bool {
        !matches!(self, KernelFamily::MacdonaldWhittaker | KernelFamily::MacdonaldBessel)
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        let alias = match s.as_str() {
            "hyper-integrable" => Some(KernelFamily::HyperIntegrable(IntegrableVariant::A1)),
            "hyper-contour" => Some(KernelFamily::HyperContour(ContourForm::First)),
            "plancherel" | "bessel" => Some(KernelFamily::PlancherelBessel),
            "gamma-limit" => Some(KernelFamily::GammaLimit),
            _ => None,
        };
        alias
            .or_else(|| Self::ALL.into_iter().find(|f| f.name() == s))
            .ok_or_else(|| Error::invalid(format!("unknown kernel family '{s}'")))
    }
}

/// Parameters a kernel is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelParams {
    Model(ModelParams),
    Plancherel(PlancherelParams),
    /// `alpha` alone, for the limit kernels that depend on `nu` only.
    Alpha {
        alpha: f64,
        #[serde(default)]
        negate_nu: bool,
    },
}

impl KernelParams {
    pub fn alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("alpha = {alpha} must be positive")));
        }
        Ok(KernelParams::Alpha {
            alpha,
            negate_nu: false,
        })
    }

    /// Flips the sign convention of `nu`; no effect on the Plancherel family.
    pub fn with_negated_nu(self) -> Self {
        match self {
            KernelParams::Model(p) => KernelParams::Model(p.with_negated_nu()),
            KernelParams::Alpha { alpha, negate_nu } => KernelParams::Alpha {
                alpha,
                negate_nu: !negate_nu,
            },
            plancherel => plancherel,
        }
    }

    pub fn nu(&self) -> Option<Order> {
        match *self {
            KernelParams::Model(p) => Some(p.nu()),
            KernelParams::Alpha { alpha, negate_nu } => {
                let nu = nu_of_alpha(alpha);
                Some(if negate_nu { nu.negated() } else { nu })
            }
            KernelParams::Plancherel(_) => None,
        }
    }
}

/// A kernel family together with compatible parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub params: KernelParams,
}

impl KernelSpec {
    /// Checks that `params` fit `family`: the hypergeometric kernels need
    /// `(alpha, xi)`, the Bessel kernel `theta`, the limit kernels `alpha`.
    pub fn new(family: KernelFamily, params: KernelParams) -> Result<Self> {
        let ok = match family {
            KernelFamily::HyperSeries | KernelFamily::HyperIntegrable(_) | KernelFamily::HyperContour(_) => {
                matches!(params, KernelParams::Model(_))
            }
            KernelFamily::PlancherelBessel => matches!(params, KernelParams::Plancherel(_)),
            _ => !matches!(params, KernelParams::Plancherel(_)),
        };
        if !ok {
            return Err(Error::invalid(format!("parameters {params:?} do not fit kernel family {family}")));
        }
        if family == KernelFamily::GammaLimit && params.nu().is_some_and(Order::is_zero) {
            return Err(Error::invalid("gamma kernel is undefined at alpha = 1/4 (nu = 0)"));
        }
        Ok(Self { family, params })
    }

    pub fn build(&self) -> Result<Kernel> {
        let nu = self.params.nu();
        Ok(match (self.family, self.params) {
            (KernelFamily::PlancherelBessel, KernelParams::Plancherel(p)) => Kernel::Plancherel(PlancherelKernel::new(p)),
            (KernelFamily::GammaLimit, _) => Kernel::Gamma(GammaKernel::new(nu.expect("checked in new"))?),
            (KernelFamily::MacdonaldWhittaker, _) => {
                Kernel::Macdonald(MacdonaldKernel::new(nu.expect("checked"), MacdonaldForm::Whittaker)?)
            }
            (KernelFamily::MacdonaldBessel, _) => {
                Kernel::Macdonald(MacdonaldKernel::new(nu.expect("checked"), MacdonaldForm::Bessel)?)
            }
            (family, KernelParams::Model(p)) => Kernel::Hyper(Box::new(HyperKernel::new(p)?), family),
            _ => return Err(Error::invalid("incompatible kernel specification")),
        })
    }
}

/// A ready-to-evaluate kernel built from a [`KernelSpec`].
#[derive(Debug, Clone)]
pub enum Kernel {
    Hyper(Box<HyperKernel>, KernelFamily),
    Plancherel(PlancherelKernel),
    Gamma(GammaKernel),
    Macdonald(MacdonaldKernel),
}

impl Kernel {
    pub fn is_lattice(&self) -> bool {
        !matches!(self, Kernel::Macdonald(_))
    }

    /// Value at lattice sites `x, y >= 1`.
    pub fn lattice(&self, x: u32, y: u32) -> Result<f64> {
        match self {
            Kernel::Hyper(k, family) => match family {
                KernelFamily::HyperSeries => k.series(x, y),
                KernelFamily::HyperIntegrable(v) => k.integrable(x, y, *v),
                KernelFamily::HyperContour(form) => k.contour(x, y, *form),
                _ => unreachable!("hyper kernels carry a hyper family"),
            },
            Kernel::Plancherel(k) => k.value(x, y),
            Kernel::Gamma(k) => k.value(x, y),
            Kernel::Macdonald(_) => Err(Error::invalid("the Macdonald kernel lives on the half-line")),
        }
    }

    /// Value at half-line points `u, v > 0`.
    pub fn continuum(&self, u: f64, v: f64) -> Result<f64> {
        match self {
            Kernel::Macdonald(k) => k.value(u, v),
            _ => Err(Error::invalid("lattice kernels take integer sites")),
        }
    }

    /// Restriction to `1..=n`.
    pub fn matrix(&self, n: usize) -> Result<TruncatedOperator> {
        symmetric_lattice_matrix(n, |x, y| self.lattice(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in KernelFamily::ALL {
            assert_eq!(f.name().parse::<KernelFamily>().unwrap(), f);
        }
        assert!("nonsense".parse::<KernelFamily>().is_err());
    }

    #[test]
    fn compatibility() {
        let model = KernelParams::Model(ModelParams::new(1.0, 0.4).unwrap());
        let theta = KernelParams::Plancherel(PlancherelParams::new(1.0).unwrap());
        assert!(KernelSpec::new(KernelFamily::HyperSeries, model).is_ok());
        assert!(KernelSpec::new(KernelFamily::HyperSeries, theta).is_err());
        assert!(KernelSpec::new(KernelFamily::PlancherelBessel, model).is_err());
        assert!(KernelSpec::new(KernelFamily::MacdonaldBessel, KernelParams::alpha(0.0625).unwrap()).is_ok());
        assert!(KernelSpec::new(KernelFamily::GammaLimit, KernelParams::alpha(0.25).unwrap()).is_err());
    }

    #[test]
    fn built_kernels_dispatch() {
        let spec = KernelSpec::new(KernelFamily::HyperSeries, KernelParams::Model(ModelParams::new(1.0, 0.4).unwrap())).unwrap();
        let k = spec.build().unwrap();
        assert!((k.lattice(1, 2).unwrap() - 0.080_326_677_456_662_8).abs() < 1e-12);
        assert!(k.continuum(1.0, 2.0).is_err());
        // alpha = 3/16 gives nu = 1/4
        let spec = KernelSpec::new(KernelFamily::MacdonaldBessel, KernelParams::alpha(0.1875).unwrap()).unwrap();
        let k = spec.build().unwrap();
        assert!((k.continuum(1.0, 2.0).unwrap() - 0.014_664_784_267_011_92).abs() < 1e-11);
    }
}
