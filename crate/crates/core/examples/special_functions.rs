//! The special-function layer.
//!
//! Run with `cargo run --example special_functions`.

use strict_dpp::specfun::{bessel_j, gauss_2f1, ln_gamma, macdonald_k, tricomi_psi, whittaker_w};
use strict_dpp::{Complex64, Order, Result};

fn main() -> Result<()> {
    let z = Complex64::new(0.5, 0.3);
    println!("ln Gamma({z}) = {}", ln_gamma(z)?);
    println!("Gamma(1/2)^2 = {:.15}", ln_gamma(Complex64::new(0.5, 0.0))?.re.exp().powi(2));

    let (a, b, c) = (Complex64::new(0.5, 0.8), Complex64::new(0.5, -0.8), Complex64::new(2.0, 0.0));
    println!("2F1(1/2+0.8i, 1/2-0.8i; 2; -3) = {}", gauss_2f1(a, b, c, -3.0)?);
    // Psi(a, a + 1; u) = u^-a
    println!("Psi(1, 2; 2) = {} (= 1/2)", tricomi_psi(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), 2.0)?);

    for nu in [Order::Real(0.5), Order::Real(0.3), Order::Imaginary(0.7)] {
        println!(
            "nu = {nu}: K_nu(1) = {:.15}, W_(0,nu)(2) = {:.15}",
            macdonald_k(nu, 1.0)?,
            whittaker_w(0, nu, 2.0)?
        );
    }
    // K_{1/2}(u) = sqrt(pi / 2u) e^{-u}
    println!("closed form K_1/2(1) = {:.15}", (std::f64::consts::PI / 2.0).sqrt() * (-1.0f64).exp());
    println!("J_0(2.404825557695773) = {:.2e}", bessel_j(0.0, 2.404_825_557_695_773));
    Ok(())
}
