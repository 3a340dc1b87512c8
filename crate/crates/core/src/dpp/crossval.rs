use std::collections::BTreeMap;

use serde::Serialize;

use super::batch::SampleBatch;
use crate::ensemble::WeightFunction;
use crate::kernels::{IntegrableVariant, KernelFamily, KernelParams, KernelSpec};
use crate::partitions::{Mixing, ModelParams};
use crate::{Result, TOLERANCES};

/// Comparison of the exact partition sampler with the DPP sampler over the
/// matching kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidationReport {
    pub mixing: Mixing,
    pub count: usize,
    pub seed: u64,
    /// Lattice window of the DPP kernel.
    pub window: usize,
    /// Total variation between the empirical laws of the largest site (0 for the empty set).
    pub tv_largest: f64,
    /// Total variation between the empirical laws of the number of points.
    pub tv_cardinality: f64,
}

/// [`cross_validate`] for the two-parameter family.
pub fn cross_validate_samplers(params: ModelParams, count: usize, seed: u64) -> Result<CrossValidationReport> {
    cross_validate(params.into(), count, seed)
}

/// Draws `count` partitions from the mixed measure and `count`
/// configurations from the DPP with the corresponding kernel (the
/// hypergeometric kernel, or the Bessel kernel for the Poisson mixture)
/// and compares the two empirical laws.
pub fn cross_validate(mixing: Mixing, count: usize, seed: u64) -> Result<CrossValidationReport> {
    let (psi, spec) = match mixing {
        Mixing::NegativeBinomial(p) => (
            WeightFunction::NuXi(p),
            KernelSpec::new(KernelFamily::HyperIntegrable(IntegrableVariant::A1), KernelParams::Model(p))?,
        ),
        Mixing::Poisson(p) => (
            WeightFunction::Theta(p),
            KernelSpec::new(KernelFamily::PlancherelBessel, KernelParams::Plancherel(p))?,
        ),
    };
    let window = psi.window(TOLERANCES.window_tail)? as usize;
    let exact = SampleBatch::from_measure(mixing, TOLERANCES.enumeration_cap, count, seed)?;
    let dpp = SampleBatch::from_kernel(spec, window, count, seed.wrapping_add(1))?;
    Ok(CrossValidationReport {
        mixing,
        count,
        seed,
        window,
        tv_largest: total_variation(&exact, &dpp, |c| c.max_site() as usize),
        tv_cardinality: total_variation(&exact, &dpp, |c| c.len()),
    })
}

fn histogram(batch: &SampleBatch, stat: &impl Fn(&crate::ensemble::PointConfiguration) -> usize) -> BTreeMap<usize, f64> {
    let mut h = BTreeMap::new();
    let weight = 1.0 / batch.configurations.len().max(1) as f64;
    for c in &batch.configurations {
        *h.entry(stat(c)).or_insert(0.0) += weight;
    }
    h
}

fn total_variation(
    a: &SampleBatch,
    b: &SampleBatch,
    stat: impl Fn(&crate::ensemble::PointConfiguration) -> usize,
) -> f64 {
    let (ha, hb) = (histogram(a, &stat), histogram(b, &stat));
    let keys: std::collections::BTreeSet<_> = ha.keys().chain(hb.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (ha.get(k).unwrap_or(&0.0) - hb.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_parameters_concentrate_on_empty_set() {
        let report = cross_validate_samplers(ModelParams::new(1.0, 1e-6).unwrap(), 2000, 3).unwrap();
        assert!(report.tv_largest < 1e-3 && report.tv_cardinality < 1e-3, "{report:?}");
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = ModelParams::new(1.0, 0.4).unwrap();
        assert_eq!(cross_validate_samplers(p, 500, 9).unwrap(), cross_validate_samplers(p, 500, 9).unwrap());
    }
}
