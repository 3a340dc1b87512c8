//! Strict partitions and the measures on them.
//!
//! Run with `cargo run --example measures`.

use strict_dpp::partitions::{
    count_strict, deformed_layer, enumerate_strict, mixed_measure, mixture_weight, plancherel_layer, Mixing,
};
use strict_dpp::{ModelParams, Result, StrictPartition};

fn main() -> Result<()> {
    let n = 8;
    println!("strict partitions of {n}: {} (enumerated {})", count_strict(n), enumerate_strict(n)?.len());

    println!("\nPlancherel layer n = {n}:");
    let layer = plancherel_layer(n)?;
    for (lambda, w) in &layer {
        println!("  {:<14} {w:.6}", format!("{:?}", lambda.parts()));
    }
    let total: f64 = layer.iter().map(|(_, w)| w).sum();
    println!("  sum = {total:.15}");

    for alpha in [0.1, 1.0, 5.0] {
        let total: f64 = deformed_layer(n, alpha)?.iter().map(|(_, w)| w).sum();
        println!("deformed layer, alpha = {alpha}: sum = {total:.15}");
    }

    let params = ModelParams::new(1.0, 0.4)?;
    println!("\nmixed measure, alpha = 1, xi = 0.4 (nu = {}):", params.nu());
    for k in 0..5 {
        println!("  P(|lambda| = {k}) = {:.6}", mixture_weight(k, Mixing::from(params)));
    }
    for parts in [vec![], vec![1], vec![2], vec![2, 1], vec![3, 1]] {
        let lambda = StrictPartition::new(parts)?;
        println!("  M({:?}) = {:.6e}", lambda.parts(), mixed_measure(&lambda, params)?);
    }
    Ok(())
}
