use strict_dpp::kernels::{k_macdonald, ContinuumDiscretization, MacdonaldForm};
use strict_dpp::numerics::symmetric_eig;
use strict_dpp::Order;

#[test]
fn discretized_kernel_approaches_closed_form() {
    for nu in [Order::Real(0.25), Order::Imaginary(0.7)] {
        let disc = ContinuumDiscretization::new(nu, 0.02, 1000).unwrap();
        let grid = disc.grid();
        // nodes near u = 0.5, 1, 2, 4
        let picks = [24, 49, 99, 199];
        for &i in &picks {
            for &j in &picks {
                let exact = k_macdonald(grid[i], grid[j], nu, MacdonaldForm::Bessel).unwrap();
                let approx = disc.kernel_density(i, j);
                assert!(((approx - exact) / exact).abs() < 0.02, "{nu:?} ({}, {}): {approx} vs {exact}", grid[i], grid[j]);
            }
        }
    }
}

#[test]
fn discretized_spectrum_in_unit_interval() {
    let disc = ContinuumDiscretization::new(Order::Real(0.25), 0.05, 300).unwrap();
    let spec = symmetric_eig(&disc.k).unwrap();
    assert!(spec.eigenvalues.iter().all(|&l| l > -1e-12 && l < 1.0 - 1e-12));
}
