use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::DppSampler;
use crate::ensemble::PointConfiguration;
use crate::kernels::KernelSpec;
use crate::partitions::{Mixing, PartitionSampler};
use crate::{Error, Result};

/// Smallest batch [`estimate_correlation`] accepts.
pub const MIN_ESTIMATE_COUNT: usize = 1000;

/// What a batch was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum BatchSource {
    /// A kernel restricted to `1..=window`.
    Kernel { spec: KernelSpec, window: usize },
    /// The exact sampler of a mixed measure on strict partitions.
    Measure { mixing: Mixing },
}

/// Independent configurations, reproducible from `(seed, source, count)`.
///
/// Draw `i` uses ChaCha8 seeded with `seed` on stream `i`, so the batch
/// does not depend on how the work is scheduled across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub source: BatchSource,
    pub seed: u64,
    pub count: usize,
    pub configurations: Vec<PointConfiguration>,
}

fn stream(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

impl SampleBatch {
    /// Draws from the DPP whose kernel is `spec` restricted to `1..=window`.
    pub fn from_kernel(spec: KernelSpec, window: usize, count: usize, seed: u64) -> Result<Self> {
        let k = spec.build()?.matrix(window)?;
        let sampler = DppSampler::from_kernel(&k)?;
        Ok(Self::from_sampler(&sampler, BatchSource::Kernel { spec, window }, count, seed))
    }

    /// Draws with a prepared sampler, labelling the batch with `source`.
    pub fn from_sampler(sampler: &DppSampler, source: BatchSource, count: usize, seed: u64) -> Self {
        let configurations = (0..count)
            .into_par_iter()
            .map(|i| sampler.sample(&mut stream(seed, i)))
            .collect();
        Self {
            source,
            seed,
            count,
            configurations,
        }
    }

    /// Draws partitions from the mixed measure and maps each to its set of parts.
    pub fn from_measure(mixing: Mixing, cap: usize, count: usize, seed: u64) -> Result<Self> {
        let sampler = PartitionSampler::new(mixing, cap)?;
        let configurations = (0..count)
            .into_par_iter()
            .map(|i| PointConfiguration::from(&sampler.sample(&mut stream(seed, i))))
            .collect();
        Ok(Self {
            source: BatchSource::Measure { mixing },
            seed,
            count,
            configurations,
        })
    }

    /// One configuration per row, sites separated by spaces, under the
    /// header `configuration`. The empty configuration is an empty field.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["configuration"])?;
        for c in &self.configurations {
            w.write_record([c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }
}

/// Monte-Carlo estimate of the correlation function `rho(X)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEstimate {
    pub sites: PointConfiguration,
    pub estimate: f64,
    /// `sqrt(p (1 - p) / count)`.
    pub std_error: f64,
    pub count: usize,
}

impl CorrelationEstimate {
    /// `|estimate - expected|` in units of the standard error; a zero
    /// standard error counts as one unit of `1 / count`.
    pub fn z_score(&self, expected: f64) -> f64 {
        let se = self.std_error.max(1.0 / self.count as f64);
        (self.estimate - expected).abs() / se
    }
}

/// Fraction of configurations containing every site of `x`.
pub fn estimate_correlation(batch: &SampleBatch, x: &PointConfiguration) -> Result<CorrelationEstimate> {
    let count = batch.configurations.len();
    if count < MIN_ESTIMATE_COUNT {
        return Err(Error::invalid(format!(
            "correlation estimates need at least {MIN_ESTIMATE_COUNT} samples, got {count}"
        )));
    }
    let hits = batch.configurations.iter().filter(|c| c.contains_all(x)).count();
    let p = hits as f64 / count as f64;
    Ok(CorrelationEstimate {
        sites: x.clone(),
        estimate: p,
        std_error: (p * (1.0 - p) / count as f64).sqrt(),
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{KernelFamily, KernelParams};
    use crate::partitions::ModelParams;

    fn spec() -> KernelSpec {
        KernelSpec::new(KernelFamily::HyperSeries, KernelParams::Model(ModelParams::new(1.0, 0.4).unwrap())).unwrap()
    }

    #[test]
    fn reproducible_and_exported_identically() {
        let a = SampleBatch::from_kernel(spec(), 20, 300, 7).unwrap();
        let b = SampleBatch::from_kernel(spec(), 20, 300, 7).unwrap();
        assert_eq!(a, b);
        let (mut ja, mut jb) = (Vec::new(), Vec::new());
        a.write_json(&mut ja).unwrap();
        b.write_json(&mut jb).unwrap();
        assert_eq!(ja, jb);
        let c = SampleBatch::from_kernel(spec(), 20, 300, 8).unwrap();
        assert_ne!(a.configurations, c.configurations);
    }

    #[test]
    fn csv_layout() {
        let batch = SampleBatch {
            source: BatchSource::Measure {
                mixing: ModelParams::new(1.0, 0.4).unwrap().into(),
            },
            seed: 0,
            count: 2,
            configurations: vec![PointConfiguration::empty(), PointConfiguration::new(vec![1, 4]).unwrap()],
        };
        let mut out = Vec::new();
        batch.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "configuration\n\"\"\n1 4\n");
    }

    #[test]
    fn trivial_estimates() {
        let batch = SampleBatch::from_kernel(spec(), 10, 1000, 1).unwrap();
        let all = estimate_correlation(&batch, &PointConfiguration::empty()).unwrap();
        assert_eq!(all.estimate, 1.0);
        let beyond = estimate_correlation(&batch, &PointConfiguration::new(vec![11]).unwrap()).unwrap();
        assert_eq!(beyond.estimate, 0.0);
        let small = SampleBatch::from_kernel(spec(), 10, 10, 1).unwrap();
        assert!(estimate_correlation(&small, &PointConfiguration::empty()).is_err());
    }
}
