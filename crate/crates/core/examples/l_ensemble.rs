//! The L-ensemble on a finite window: Fredholm normalization, configuration
//! probabilities by two routes, and the correlation kernel `K = L(1 + L)^-1`.
//!
//! Run with `cargo run --example l_ensemble`.

use strict_dpp::ensemble::{defining_relation_residual, LEnsemble, PointConfiguration, WeightFunction};
use strict_dpp::partitions::mixed_measure;
use strict_dpp::{ModelParams, Result, StrictPartition};

fn main() -> Result<()> {
    let params = ModelParams::new(1.0, 0.4)?;
    let ensemble = LEnsemble::with_adaptive_window(WeightFunction::NuXi(params))?;
    println!("window N = {}, det(1 + L_N) = {:.12}", ensemble.size(), ensemble.fredholm_det());

    println!("\n{:<10} {:>14} {:>14} {:>14}", "X", "U^2 prod psi", "det L_X", "measure");
    for sites in [vec![], vec![1], vec![3], vec![1, 2], vec![4, 2, 1]] {
        let x = PointConfiguration::from_unsorted(sites)?;
        let p = ensemble.probability(&x)?;
        let lambda = StrictPartition::from_sites(x.sites())?;
        println!(
            "{:<10} {:>14.8e} {:>14.8e} {:>14.8e}",
            format!("{:?}", x.sites()),
            p.cauchy,
            p.minor,
            mixed_measure(&lambda, params)?
        );
    }

    let k = ensemble.kernel()?;
    println!("\nK(1,1) = {:.12}, K(1,2) = {:.12}", k.get(0, 0), k.get(0, 1));
    println!("max |K + KL - L| = {:.2e}", defining_relation_residual(&k, ensemble.l()));
    Ok(())
}
