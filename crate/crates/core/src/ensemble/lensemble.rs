use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::configuration::{u_factor, PointConfiguration};
use super::weights::WeightFunction;
use crate::numerics::{symmetric_eig, SiteMap, SpectralData, TruncatedOperator};
use crate::{Error, Result, TOLERANCES};

/// Agreement required between the two probability routes.
const ROUTE_AGREEMENT: f64 = 1e-10;
/// Allowed relative change of `det(1 + L_N)` when the window is doubled.
const DOUBLING_STABILITY: f64 = 1e-10;

fn l_matrix(psi: &WeightFunction, n: usize) -> Result<TruncatedOperator> {
    let logs = (1..=n as u32).map(|x| psi.ln_value(x)).collect::<Result<Vec<_>>>()?;
    TruncatedOperator::from_lattice_fn(n, |x, y| {
        let half = 0.5 * (logs[x as usize - 1] + logs[y as usize - 1]);
        let (xf, yf) = (x as f64, y as f64);
        Ok(2.0 * (xf * yf).sqrt() / (xf + yf) * half.exp())
    })
}

/// `ln det [1/(x_i + x_j)]` by exact elimination; the matrix is positive definite.
fn ln_cauchy_determinant(sites: &[u32]) -> f64 {
    let k = sites.len();
    let mut m: Vec<Vec<BigRational>> = sites
        .iter()
        .map(|&a| {
            sites
                .iter()
                .map(|&b| BigRational::new(BigInt::one(), BigInt::from(a as u64 + b as u64)))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for c in 0..k {
        let pivot = m[c][c].clone();
        debug_assert!(!pivot.is_zero());
        det *= &pivot;
        for r in c + 1..k {
            let factor = &m[r][c] / &pivot;
            for j in c..k {
                let delta = &factor * &m[c][j];
                m[r][j] -= delta;
            }
        }
    }
    ln_big(det.numer()) - ln_big(det.denom())
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top: BigInt = n.abs() >> shift;
    let mantissa: f64 = top.to_string().parse().expect("decimal digits");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

fn check_psd(spectral: &SpectralData) -> Result<()> {
    let min = spectral.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -TOLERANCES.psd_floor {
        return Err(Error::Invariant {
            invariant: "L is positive semidefinite",
            residual: min,
        });
    }
    Ok(())
}

/// `L(x, y) = 2 sqrt(x y psi(x) psi(y)) / (x + y)` on `1..=n`, checked to be
/// positive semidefinite.
pub fn build_l(psi: &WeightFunction, n: usize) -> Result<TruncatedOperator> {
    let l = l_matrix(psi, n)?;
    check_psd(&symmetric_eig(&l)?)?;
    Ok(l)
}

/// `K = L (1 + L)^-1` through the eigendecomposition of `L`.
pub fn kernel_from_l(l: &TruncatedOperator) -> Result<TruncatedOperator> {
    let spectral = symmetric_eig(l)?;
    kernel_from_spectral(l, &spectral)
}

fn kernel_from_spectral(l: &TruncatedOperator, spectral: &SpectralData) -> Result<TruncatedOperator> {
    if let Some(&min) = spectral.eigenvalues.last() {
        if min <= -1.0 + 1e-14 {
            return Err(Error::Singular(min));
        }
    }
    let k = spectral.map_eigenvalues(|lambda| lambda / (1.0 + lambda));
    TruncatedOperator::symmetrized(k, l.sites().clone())
}

/// `max |K + K L - L|` over the window.
pub fn defining_relation_residual(k: &TruncatedOperator, l: &TruncatedOperator) -> f64 {
    (k.entries() + k.entries() * l.entries() - l.entries()).amax()
}

/// Probability of a configuration by both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfigProbability {
    /// `U(X)^2 prod psi(x) / det(1 + L_N)`.
    pub cauchy: f64,
    /// `det L_X / det(1 + L_N)`.
    pub minor: f64,
}

/// The process on a window `1..=N` with its spectral data and Fredholm
/// determinant precomputed.
#[derive(Debug, Clone)]
pub struct LEnsemble {
    psi: WeightFunction,
    l: TruncatedOperator,
    spectral: SpectralData,
    ln_det: f64,
}

impl LEnsemble {
    pub fn new(psi: WeightFunction, n: usize) -> Result<Self> {
        let l = l_matrix(&psi, n)?;
        let spectral = symmetric_eig(&l)?;
        check_psd(&spectral)?;
        let ln_det = spectral.eigenvalues.iter().map(|v| v.ln_1p()).sum();
        Ok(Self {
            psi,
            l,
            spectral,
            ln_det,
        })
    }

    /// Window chosen as the smallest `N` with `psi` tail below the
    /// configured bound.
    pub fn with_adaptive_window(psi: WeightFunction) -> Result<Self> {
        let n = psi.window(TOLERANCES.window_tail)?;
        Self::new(psi, n as usize)
    }

    pub fn psi(&self) -> &WeightFunction {
        &self.psi
    }

    pub fn size(&self) -> usize {
        self.l.size()
    }

    pub fn l(&self) -> &TruncatedOperator {
        &self.l
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn ln_fredholm_det(&self) -> f64 {
        self.ln_det
    }

    pub fn fredholm_det(&self) -> f64 {
        self.ln_det.exp()
    }

    pub fn kernel(&self) -> Result<TruncatedOperator> {
        kernel_from_spectral(&self.l, &self.spectral)
    }

    fn check_window(&self, x: &PointConfiguration) -> Result<()> {
        if x.max_site() as usize > self.size() {
            return Err(Error::invalid(format!(
                "configuration reaches site {} beyond the window {}",
                x.max_site(),
                self.size()
            )));
        }
        Ok(())
    }

    /// Route (a): `U(X)^2 prod psi(x_i) / det(1 + L_N)`.
    pub fn probability_cauchy(&self, x: &PointConfiguration) -> Result<f64> {
        self.check_window(x)?;
        let mut log = 2.0 * u_factor(x).abs().ln() - self.ln_det;
        for &s in x.sites() {
            log += self.psi.ln_value(s)?;
        }
        Ok(log.exp())
    }

    /// Route (b): `det L_X / det(1 + L_N)`.
    ///
    /// `L_X = D C D` with `D = diag(sqrt(2 x psi(x)))` and `C = [1/(x_i + x_j)]`.
    /// `det C` is found by Gaussian elimination in exact rational
    /// arithmetic: for clustered sites `C` is too ill-conditioned for a
    /// floating-point LU to reach `1e-10` relative accuracy.
    pub fn probability_minor(&self, x: &PointConfiguration) -> Result<f64> {
        self.check_window(x)?;
        let mut log = ln_cauchy_determinant(x.sites()) - self.ln_det;
        for &s in x.sites() {
            log += (2.0 * s as f64).ln() + self.psi.ln_value(s)?;
        }
        Ok(log.exp())
    }

    /// Both routes, failing when they disagree beyond `1e-10` relative.
    pub fn probability(&self, x: &PointConfiguration) -> Result<ConfigProbability> {
        let cauchy = self.probability_cauchy(x)?;
        let minor = self.probability_minor(x)?;
        let diff = (cauchy - minor).abs();
        if diff > ROUTE_AGREEMENT * cauchy.abs().max(minor.abs()) + f64::MIN_POSITIVE {
            return Err(Error::Invariant {
                invariant: "Cauchy determinant identity det L_X = U(X)^2 prod psi",
                residual: diff / cauchy.abs().max(minor.abs()),
            });
        }
        Ok(ConfigProbability { cauchy, minor })
    }
}

/// `P(X)` on the window `1..=n` by both routes, after checking that the
/// Fredholm determinant is stable when the window is doubled.
pub fn config_probability(x: &PointConfiguration, psi: &WeightFunction, n: usize) -> Result<ConfigProbability> {
    let ensemble = LEnsemble::new(psi.clone(), n)?;
    let doubled = LEnsemble::new(psi.clone(), 2 * n)?;
    let change = (ensemble.ln_det - doubled.ln_det).abs();
    if change > DOUBLING_STABILITY {
        return Err(Error::Invariant {
            invariant: "det(1 + L_N) stable under window doubling",
            residual: change,
        });
    }
    ensemble.probability(x)
}

/// JSON form of a truncated operator for regression goldens.
#[derive(Debug, Serialize)]
pub struct OperatorExport<'a, P: Serialize> {
    pub params: &'a P,
    #[serde(rename = "N")]
    pub n: usize,
    pub sites: &'a SiteMap,
    pub entries: Vec<f64>,
}

pub fn write_operator_json<W: Write, P: Serialize>(out: W, params: &P, op: &TruncatedOperator) -> Result<()> {
    let export = OperatorExport {
        params,
        n: op.size(),
        sites: op.sites(),
        entries: op.row_major(),
    };
    serde_json::to_writer_pretty(out, &export)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::det_plus_identity;
    use crate::partitions::{ModelParams, PlancherelParams};
    use nalgebra::DMatrix;

    fn theta() -> WeightFunction {
        WeightFunction::Theta(PlancherelParams::new(1.0).unwrap())
    }

    fn nuxi() -> WeightFunction {
        WeightFunction::NuXi(ModelParams::new(1.0, 0.4).unwrap())
    }

    #[test]
    fn l_diagonal_is_psi() {
        let l = build_l(&nuxi(), 30).unwrap();
        for x in 1..=30u32 {
            let psi = nuxi().value(x).unwrap();
            assert!((l.get(x as usize - 1, x as usize - 1) - psi).abs() <= 1e-15 * psi);
        }
        let one = build_l(&theta(), 1).unwrap();
        assert!((one.get(0, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn l_is_psd_on_wide_window() {
        let l = build_l(&nuxi(), 60).unwrap();
        let spec = symmetric_eig(&l).unwrap();
        assert!(*spec.eigenvalues.last().unwrap() >= -1e-12);
    }

    #[test]
    fn fredholm_truncation_is_stable() {
        let a = det_plus_identity(&build_l(&theta(), 50).unwrap()).unwrap();
        let b = det_plus_identity(&build_l(&theta(), 80).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-10 * b, "{a} {b}");
    }

    #[test]
    fn small_configurations() {
        let ens = LEnsemble::new(nuxi(), 40).unwrap();
        let empty = ens.probability(&PointConfiguration::empty()).unwrap();
        assert!((empty.cauchy - 1.0 / ens.fredholm_det()).abs() < 1e-15);
        let single = ens.probability(&PointConfiguration::new(vec![3]).unwrap()).unwrap();
        let expected = nuxi().value(3).unwrap() / ens.fredholm_det();
        assert!((single.minor - expected).abs() < 1e-14 * expected);
        assert!(ens.probability(&PointConfiguration::new(vec![41]).unwrap()).is_err());
    }

    #[test]
    fn exhaustive_sum_of_small_configurations() {
        // theta = 1: configurations with more than 4 points carry mass far below 1e-8
        let n = 12;
        let ens = LEnsemble::new(theta(), n).unwrap();
        let mut total = 0.0;
        let mut stack = vec![(Vec::<u32>::new(), 1u32)];
        while let Some((sites, next)) = stack.pop() {
            let conf = PointConfiguration::new(sites.clone()).unwrap();
            total += ens.probability_cauchy(&conf).unwrap();
            if sites.len() < 4 {
                for s in next..=n as u32 {
                    let mut more = sites.clone();
                    more.push(s);
                    stack.push((more, s + 1));
                }
            }
        }
        assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn kernel_from_trivial_l() {
        let zero = TruncatedOperator::new(DMatrix::zeros(3, 3), SiteMap::Lattice).unwrap();
        assert_eq!(kernel_from_l(&zero).unwrap().entries().amax(), 0.0);
        let one = TruncatedOperator::new(DMatrix::identity(1, 1), SiteMap::Lattice).unwrap();
        assert!((kernel_from_l(&one).unwrap().get(0, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kernel_satisfies_defining_relation_and_is_not_a_projection() {
        let l = build_l(&nuxi(), 120).unwrap();
        let k = kernel_from_l(&l).unwrap();
        assert!(defining_relation_residual(&k, &l) < 1e-10);
        let k2 = k.entries() * k.entries();
        assert!((k2 - k.entries()).amax() > 0.01);
    }

    #[test]
    fn doubling_check_and_json_export() {
        let p = config_probability(&PointConfiguration::new(vec![1, 2]).unwrap(), &theta(), 20).unwrap();
        assert!((p.cauchy - p.minor).abs() < 1e-12 * p.cauchy);
        let l = build_l(&theta(), 2).unwrap();
        let mut buf = Vec::new();
        write_operator_json(&mut buf, &PlancherelParams::new(1.0).unwrap(), &l).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["N"], 2);
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["params"]["theta"], 1.0);
    }
}
