use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ensemble::PointConfiguration;
use crate::numerics::{symmetric_eig, SpectralData, TruncatedOperator};
use crate::{Error, Result, TOLERANCES};

/// Slack allowed on either end of `[0, 1]` before a spectrum is rejected.
const SPECTRUM_SLACK: f64 = 1e-12;

/// Spectral sampler for a determinantal process with symmetric kernel.
///
/// Each eigenvector is kept independently with probability equal to its
/// eigenvalue; the projection process onto the kept vectors is then drawn
/// one point at a time, each point chosen with probability proportional to
/// the current diagonal, after which the span is restricted to vectors
/// vanishing at that point.
#[derive(Debug, Clone)]
pub struct DppSampler {
    probabilities: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl DppSampler {
    /// Rejects eigenvalues outside `[0, 1]` by more than `1e-12`; the rest
    /// are clamped into the interval.
    pub fn new(spectral: &SpectralData) -> Result<Self> {
        let mut probabilities = Vec::with_capacity(spectral.eigenvalues.len());
        for &lambda in &spectral.eigenvalues {
            if !(-SPECTRUM_SLACK..=1.0 + SPECTRUM_SLACK).contains(&lambda) {
                return Err(Error::SpectrumOutOfRange(lambda));
            }
            probabilities.push(lambda.clamp(0.0, 1.0));
        }
        Ok(Self {
            probabilities,
            eigenvectors: spectral.eigenvectors.clone(),
        })
    }

    pub fn from_kernel(k: &TruncatedOperator) -> Result<Self> {
        Self::new(&symmetric_eig(k)?)
    }

    pub fn size(&self) -> usize {
        self.eigenvectors.nrows()
    }

    /// Sorted 0-based indices of one draw.
    pub fn sample_indices<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let kept: Vec<usize> = self
            .probabilities
            .iter()
            .enumerate()
            .filter(|&(_, &p)| rng.random::<f64>() < p)
            .map(|(j, _)| j)
            .collect();
        let mut basis = self.eigenvectors.select_columns(&kept);
        let n = self.size();
        let mut points = Vec::with_capacity(kept.len());
        while basis.ncols() > 0 {
            let weights: Vec<f64> = (0..n)
                .map(|i| {
                    let d = basis.row(i).norm_squared();
                    if d < TOLERANCES.sampler_floor || points.contains(&i) {
                        0.0
                    } else {
                        d
                    }
                })
                .collect();
            let total: f64 = weights.iter().sum();
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, w) in weights.iter().enumerate() {
                if *w > 0.0 {
                    chosen = i;
                    if target < *w {
                        break;
                    }
                    target -= w;
                }
            }
            points.push(chosen);
            basis = restrict_to_zero_at(basis, chosen);
        }
        points.sort_unstable();
        points
    }

    /// One draw as a lattice configuration (row `i` is site `i + 1`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PointConfiguration {
        let sites = self.sample_indices(rng).into_iter().map(|i| i as u32 + 1).collect();
        PointConfiguration::new(sites).expect("indices are distinct and sorted")
    }
}

/// Orthonormal basis of the vectors in `span(basis)` that vanish at `row`;
/// one dimension smaller.
fn restrict_to_zero_at(basis: DMatrix<f64>, row: usize) -> DMatrix<f64> {
    let pivot = basis
        .row(row)
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(j, _)| j)
        .expect("basis is non-empty");
    let p = basis.column(pivot).clone_owned();
    let pv = p[row];
    let mut rest: Vec<_> = (0..basis.ncols())
        .filter(|&j| j != pivot)
        .map(|j| {
            let c = basis.column(j);
            c - &p * (c[row] / pv)
        })
        .collect();
    // modified Gram-Schmidt
    for j in 0..rest.len() {
        for i in 0..j {
            let proj = rest[i].dot(&rest[j]);
            let qi = rest[i].clone();
            rest[j] -= qi * proj;
        }
        let norm = rest[j].norm();
        rest[j] /= norm;
    }
    if rest.is_empty() {
        DMatrix::zeros(basis.nrows(), 0)
    } else {
        DMatrix::from_columns(&rest)
    }
}

/// One configuration drawn with a ChaCha8 generator seeded by `seed`.
pub fn sample_dpp(spectral: &SpectralData, seed: u64) -> Result<PointConfiguration> {
    let sampler = DppSampler::new(spectral)?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SiteMap;

    fn spectral(m: DMatrix<f64>) -> SpectralData {
        symmetric_eig(&TruncatedOperator::new(m, SiteMap::Lattice).unwrap()).unwrap()
    }

    #[test]
    fn trivial_kernels() {
        let zero = spectral(DMatrix::zeros(4, 4));
        let id = spectral(DMatrix::identity(5, 5));
        let mut e1 = DMatrix::zeros(3, 3);
        e1[(0, 0)] = 1.0;
        let e1 = spectral(e1);
        for seed in 0..20 {
            assert!(sample_dpp(&zero, seed).unwrap().is_empty());
            assert_eq!(sample_dpp(&id, seed).unwrap().sites(), &[1, 2, 3, 4, 5]);
            assert_eq!(sample_dpp(&e1, seed).unwrap().sites(), &[1]);
        }
    }

    #[test]
    fn rejects_spectrum_outside_unit_interval() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.5, 0.2]));
        assert!(matches!(DppSampler::new(&spectral(m)), Err(Error::SpectrumOutOfRange(_))));
    }

    proptest::proptest! {
        // cardinality equals the number of kept eigenvectors: for a
        // projection kernel of rank r every draw has exactly r points
        #[test]
        fn projection_cardinality(seed in 0u64..1000, rank in 0usize..6) {
            let n = 7;
            let q = symmetric_eig(&TruncatedOperator::new(
                DMatrix::from_fn(n, n, |i, j| 1.0 / (1.0 + i as f64 + j as f64)),
                SiteMap::Lattice,
            ).unwrap()).unwrap().eigenvectors;
            let v = q.columns(0, rank).clone_owned();
            let p = &v * v.transpose();
            let draw = sample_dpp(&spectral((&p + p.transpose()) * 0.5), seed).unwrap();
            proptest::prop_assert_eq!(draw.len(), rank);
        }
    }
}
