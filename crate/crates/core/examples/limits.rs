//! The three limit transitions of the lattice kernel as error scans.
//!
//! Run with `cargo run --release --example limits`.

use strict_dpp::kernels::{gamma_scan, is_decreasing, plancherel_scan, scaling_scan, ScanPoint};
use strict_dpp::{PlancherelParams, Result};

fn show(name: &str, scan: &[ScanPoint]) {
    println!("{name}:");
    for p in scan {
        println!("  xi = {:<8} alpha = {:<12.6} max error {:.3e}", p.xi, p.alpha, p.max_error);
    }
    println!("  decreasing: {}", is_decreasing(scan));
}

fn main() -> Result<()> {
    // xi -> 0 with alpha xi = theta: the Bessel kernel
    show("Plancherel degeneration (theta = 1)", &plancherel_scan(PlancherelParams::new(1.0)?, &[1e-3, 1e-4, 1e-5], 6)?);
    // xi -> 1 at fixed alpha: the gamma kernel; alpha = 0.16 is nu = 0.3
    show("gamma limit (nu = 0.3)", &gamma_scan(0.16, &[0.9, 0.99, 0.999], 6)?);
    // xi -> 1 on the scale (1 - xi) x: the continuum kernel; alpha = 0.1875 is nu = 0.25
    show("scaling limit (nu = 0.25)", &scaling_scan(0.1875, &[0.9, 0.99, 0.999], &[0.5, 1.0, 2.0])?);
    Ok(())
}
