//! Correlation kernels: the lattice kernel of the two-parameter family in
//! several representations, the Plancherel-degenerate kernel, the gamma and
//! Macdonald limit kernels, and the spectral data of the continuum operator.

mod basis;
mod continuum;
mod family;
mod gamma;
mod lattice;
mod limits;
mod plancherel;
mod spectral;

pub use basis::{ln_gauge, xi_factor, HypergeometricBasis};
pub use continuum::{k_macdonald, l_continuum, ContinuumDiscretization, MacdonaldForm, MacdonaldKernel};
pub use family::{Kernel, KernelFamily, KernelParams, KernelSpec};
pub use gamma::{k_gamma, GammaKernel};
pub use lattice::{
    hypergeometric_identity_residual, k_hyper_contour, k_hyper_integrable, k_hyper_series,
    ContourForm, HyperKernel, IntegrableVariant,
};
pub use limits::{gamma_scan, is_decreasing, plancherel_scan, scaling_scan, LimitKind, ScanPoint};
pub use plancherel::{k_plancherel, PlancherelKernel};
pub use spectral::{
    commutation_residual, eigen_relation, eigenfunction_f, eigenfunction_f_via, spectral_h,
    sturm_liouville_residual, EigenRoute,
};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::numerics::{SiteMap, TruncatedOperator};
use crate::{Result, TOLERANCES};

/// Base offset of the diagonal Richardson stencil at lattice site `x`.
pub(crate) fn lattice_step(x: f64) -> f64 {
    TOLERANCES.richardson_base * (x / 10.0).max(1.0)
}

/// Fills a symmetric lattice matrix on `1..=n` from its upper triangle, rows in parallel.
pub(crate) fn symmetric_lattice_matrix<F>(n: usize, f: F) -> Result<TruncatedOperator>
where
    F: Fn(u32, u32) -> Result<f64> + Sync,
{
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| f(i as u32 + 1, j as u32 + 1)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut m = DMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (k, v) in row.into_iter().enumerate() {
            m[(i, i + k)] = v;
            m[(i + k, i)] = v;
        }
    }
    TruncatedOperator::new(m, SiteMap::Lattice)
}
