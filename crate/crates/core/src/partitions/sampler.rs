use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::measures::{deformed_layer, mixing_cap, mixture_weight, plancherel_layer, Mixing};
use super::strict::StrictPartition;
use crate::{Error, Result, TOLERANCES};

/// Exact sampler for the mixed measures by inverse CDF: first the weight
/// `n` from the truncated and renormalized mixing law, then `lambda` from
/// the layer `|lambda| = n`.
#[derive(Debug, Clone)]
pub struct PartitionSampler {
    mixing: Mixing,
    layer_cdf: Vec<f64>,
    layers: Vec<Vec<(StrictPartition, f64)>>,
}

impl PartitionSampler {
    /// Fails with [`Error::CapExceeded`] when the mixing mass beyond `cap`
    /// is not below the configured tail.
    pub fn new(mixing: Mixing, cap: usize) -> Result<Self> {
        let top = mixing_cap(mixing, TOLERANCES.mixing_tail) as usize;
        if top > cap {
            return Err(Error::CapExceeded { cap, requested: top });
        }
        let mut layer_cdf = Vec::with_capacity(top + 1);
        let mut layers = Vec::with_capacity(top + 1);
        let mut acc = 0.0;
        for n in 0..=top as u32 {
            acc += mixture_weight(n, mixing);
            layer_cdf.push(acc);
            let layer = match mixing {
                Mixing::Poisson(_) => plancherel_layer(n)?,
                Mixing::NegativeBinomial(p) => deformed_layer(n, p.alpha())?,
            };
            layers.push(cumulative(layer));
        }
        for c in layer_cdf.iter_mut() {
            *c /= acc;
        }
        Ok(Self {
            mixing,
            layer_cdf,
            layers,
        })
    }

    pub fn mixing(&self) -> Mixing {
        self.mixing
    }

    /// Largest weight the sampler can produce.
    pub fn max_weight(&self) -> u32 {
        (self.layer_cdf.len() - 1) as u32
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> StrictPartition {
        let n = search(&self.layer_cdf, rng.random::<f64>());
        let layer = &self.layers[n];
        let u = rng.random::<f64>() * layer.last().map(|(_, c)| *c).unwrap_or(1.0);
        let idx = layer.partition_point(|(_, c)| *c <= u).min(layer.len() - 1);
        layer[idx].0.clone()
    }
}

fn cumulative(layer: Vec<(StrictPartition, f64)>) -> Vec<(StrictPartition, f64)> {
    let mut acc = 0.0;
    layer
        .into_iter()
        .map(|(l, w)| {
            acc += w;
            (l, acc)
        })
        .collect()
}

fn search(cdf: &[f64], u: f64) -> usize {
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

/// One draw from the mixed measure with a fresh generator seeded by `seed`.
pub fn sample_partition(mixing: Mixing, seed: u64, cap: usize) -> Result<StrictPartition> {
    let sampler = PartitionSampler::new(mixing, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sampler.sample(&mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{ModelParams, PlancherelParams};

    #[test]
    fn tiny_xi_gives_empty_partitions() {
        let sampler = PartitionSampler::new(ModelParams::new(1.0, 1e-6).unwrap().into(), 60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!((0..1000).all(|_| sampler.sample(&mut rng).is_empty()));
    }

    #[test]
    fn empty_frequency_matches_poisson_mass() {
        let sampler = PartitionSampler::new(PlancherelParams::new(2.0).unwrap().into(), 60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 50_000;
        let hits = (0..draws).filter(|_| sampler.sample(&mut rng).is_empty()).count();
        let p = (-1f64).exp();
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        assert!(((hits as f64 / draws as f64) - p).abs() < 4.0 * sigma);
    }

    #[test]
    fn deterministic_given_seed() {
        let mixing: Mixing = ModelParams::new(1.0, 0.4).unwrap().into();
        let a = sample_partition(mixing, 42, 60).unwrap();
        let b = sample_partition(mixing, 42, 60).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_error_when_mass_escapes() {
        let mixing: Mixing = PlancherelParams::new(200.0).unwrap().into();
        assert!(matches!(PartitionSampler::new(mixing, 60), Err(Error::CapExceeded { .. })));
    }
}
