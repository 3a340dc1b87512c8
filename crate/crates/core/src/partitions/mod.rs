//! Strict partitions and the measures on them: the strict Plancherel
//! measure, its `alpha`-deformation, the Poisson and negative-binomial
//! mixtures over the weight, and an exact sampler.

mod measures;
mod sampler;
mod strict;

pub use measures::{
    deformed_layer, deformed_weight, ln_deformed_factor, ln_mixture_weight, ln_plancherel_weight,
    mixed_measure, mixing_cap, mixture_weight, nu_of_alpha, plancherel_layer, plancherel_mixed,
    plancherel_weight, Mixing, ModelParams, PlancherelParams,
};
pub use sampler::{sample_partition, PartitionSampler};
pub use strict::{count_strict, enumerate_strict, enumerate_strict_capped, write_partitions_csv, StrictPartition};
