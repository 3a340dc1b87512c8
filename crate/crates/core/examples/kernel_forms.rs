//! The lattice correlation kernel in all of its closed forms.
//!
//! Run with `cargo run --example kernel_forms`.

use strict_dpp::kernels::{ContourForm, HyperKernel, IntegrableVariant, KernelFamily, KernelParams, KernelSpec};
use strict_dpp::{ModelParams, Result};

fn main() -> Result<()> {
    // alpha = 0.2 gives a real nu, alpha = 1 an imaginary one
    for (alpha, xi) in [(0.2, 0.3), (1.0, 0.4)] {
        let params = ModelParams::new(alpha, xi)?;
        let k = HyperKernel::new(params)?;
        println!("alpha = {alpha}, xi = {xi}, nu = {}", params.nu());
        println!("  {:<7} {:>20} {:>20} {:>20} {:>20}", "(x,y)", "series", "integrable A2", "contour 1", "contour 2");
        for (x, y) in [(1, 1), (1, 2), (2, 5), (4, 4)] {
            println!(
                "  {:<7} {:>20.15} {:>20.15} {:>20.15} {:>20.15}",
                format!("({x},{y})"),
                k.series(x, y)?,
                k.integrable(x, y, IntegrableVariant::A2)?,
                k.contour(x, y, ContourForm::First)?,
                k.contour(x, y, ContourForm::Second)?,
            );
        }
        let flipped = HyperKernel::new(params.with_negated_nu())?;
        println!("  nu -> -nu: K(2,3) {:.15} vs {:.15}", k.series(2, 3)?, flipped.series(2, 3)?);
    }

    // the same through the family dispatcher used by the command line
    let spec = KernelSpec::new(KernelFamily::PlancherelBessel, KernelParams::Plancherel(strict_dpp::PlancherelParams::new(1.0)?))?;
    let bessel = spec.build()?;
    println!("\nBessel kernel, theta = 1: K(1,1) = {:.15}, K(1,2) = {:.15}", bessel.lattice(1, 1)?, bessel.lattice(1, 2)?);
    Ok(())
}
