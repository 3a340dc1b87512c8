//! The continuum kernel on the half-line: its two closed forms, a
//! discretization of `L (1 + L)^-1`, and its spectral description.
//!
//! Run with `cargo run --release --example continuum`.

use strict_dpp::kernels::{
    eigen_relation, eigenfunction_f, spectral_h, ContinuumDiscretization, MacdonaldForm, MacdonaldKernel,
};
use strict_dpp::numerics::symmetric_eig;
use strict_dpp::{Order, Result};

fn main() -> Result<()> {
    let nu = Order::Real(0.25);
    let whittaker = MacdonaldKernel::new(nu, MacdonaldForm::Whittaker)?;
    let bessel = MacdonaldKernel::new(nu, MacdonaldForm::Bessel)?;
    println!("{:<12} {:>20} {:>20}", "(u,v)", "Whittaker form", "Bessel form");
    for (u, v) in [(0.5, 0.5), (0.5, 1.0), (1.0, 2.0), (3.0, 4.5)] {
        println!("{:<12} {:>20.15} {:>20.15}", format!("({u},{v})"), whittaker.value(u, v)?, bessel.value(u, v)?);
    }

    let disc = ContinuumDiscretization::new(nu, 0.02, 1000)?;
    println!("\nmidpoint discretization, h = 0.02, 1000 nodes:");
    for (i, j) in [(24, 24), (24, 49), (49, 99)] {
        let (u, v) = (disc.grid()[i], disc.grid()[j]);
        println!("  K({u:.2},{v:.2}) ~ {:.6}  exact {:.6}", disc.kernel_density(i, j), bessel.value(u, v)?);
    }
    let top = symmetric_eig(&disc.k)?.eigenvalues[0];
    println!("  largest eigenvalue {top:.6} < h_nu(1/4) = {:.6}", spectral_h(nu, 0.25)?);

    println!("\neigenfunctions f_m and eigenvalues h(m^2 + 1/4):");
    for m in [0.5, 1.0, 2.0] {
        let r = m * m + 0.25;
        println!("  m = {m}: f_m(1) = {:.10}, h = {:.10}", eigenfunction_f(m, 1.0)?, spectral_h(Order::Real(0.3), r)?);
    }
    let (lhs, rhs) = eigen_relation(Order::Real(0.3), 1.0, 1.0)?;
    println!("  int K(1,v) f_1(v) dv = {lhs:.10}, h f_1(1) = {rhs:.10}");
    Ok(())
}
