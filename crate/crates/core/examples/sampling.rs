//! Sampling the process two ways: spectrally from the kernel, and exactly
//! from the measure on strict partitions.
//!
//! Run with `cargo run --release --example sampling`.

use strict_dpp::dpp::{cross_validate_samplers, estimate_correlation, SampleBatch};
use strict_dpp::ensemble::{PointConfiguration, WeightFunction};
use strict_dpp::kernels::{HyperKernel, IntegrableVariant, KernelFamily, KernelParams, KernelSpec};
use strict_dpp::{ModelParams, Result, TOLERANCES};

fn main() -> Result<()> {
    let params = ModelParams::new(1.0, 0.8)?;
    let window = WeightFunction::NuXi(params).window(TOLERANCES.window_tail)? as usize;
    let spec = KernelSpec::new(KernelFamily::HyperIntegrable(IntegrableVariant::A1), KernelParams::Model(params))?;
    let batch = SampleBatch::from_kernel(spec, window, 20_000, 42)?;
    let first: Vec<&[u32]> = batch.configurations.iter().take(6).map(|c| c.sites()).collect();
    println!("{} samples on 1..={window}; first few: {first:?}", batch.count);

    let k = HyperKernel::new(params)?;
    println!("\n{:<4} {:>10} {:>10} {:>10}", "x", "rho^", "s.e.", "K(x,x)");
    for x in 1..=6 {
        let est = estimate_correlation(&batch, &PointConfiguration::new(vec![x])?)?;
        println!("{x:<4} {:>10.5} {:>10.5} {:>10.5}", est.estimate, est.std_error, k.value(x, x)?);
    }
    let pair = estimate_correlation(&batch, &PointConfiguration::new(vec![1, 2])?)?;
    let exact = k.value(1, 1)? * k.value(2, 2)? - k.value(1, 2)?.powi(2);
    println!("rho(1,2) = {:.5} +- {:.5}, det K = {exact:.5}", pair.estimate, pair.std_error);

    let report = cross_validate_samplers(ModelParams::new(1.0, 0.4)?, 20_000, 7)?;
    println!(
        "\nkernel sampler vs partition sampler (alpha = 1, xi = 0.4): TV(largest) = {:.4}, TV(count) = {:.4}",
        report.tv_largest, report.tv_cardinality
    );
    Ok(())
}
