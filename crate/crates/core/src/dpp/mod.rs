//! Sampling determinantal processes with symmetric kernels and estimating
//! their correlation functions from samples.

mod batch;
mod crossval;
mod sampler;

pub use batch::{estimate_correlation, BatchSource, CorrelationEstimate, SampleBatch, MIN_ESTIMATE_COUNT};
pub use crossval::{cross_validate, cross_validate_samplers, CrossValidationReport};
pub use sampler::{sample_dpp, DppSampler};
