use nalgebra::DMatrix;
use serde::Serialize;

use crate::{Error, Result, TOLERANCES};

/// Which points the rows and columns of a truncated operator stand for.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "nodes")]
pub enum SiteMap {
    /// Lattice sites `1..=N`.
    Lattice,
    /// Quadrature nodes of a discretized continuum.
    Grid(Vec<f64>),
}

/// An `N x N` real symmetric matrix standing for `L` or `K` restricted to a
/// finite window. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: DMatrix<f64>,
    sites: SiteMap,
}

impl TruncatedOperator {
    /// Validates shape, finiteness and symmetry (to `1e-12` relative to the
    /// largest entry).
    pub fn new(entries: DMatrix<f64>, sites: SiteMap) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || entries.ncols() != n {
            return Err(Error::invalid(format!(
                "operator must be square and non-empty, got {}x{}",
                n,
                entries.ncols()
            )));
        }
        if let SiteMap::Grid(nodes) = &sites {
            if nodes.len() != n {
                return Err(Error::invalid("grid length does not match operator size"));
            }
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("operator has non-finite entries"));
        }
        let scale = entries.amax().max(1.0);
        let asym = (&entries - entries.transpose()).amax();
        if asym > TOLERANCES.symmetry * scale {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self { entries, sites })
    }

    /// Builds a lattice operator from its upper triangle; `f` gets 1-based sites.
    pub fn from_lattice_fn<F>(n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(u32, u32) -> Result<f64>,
    {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i as u32 + 1, j as u32 + 1)?;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Self::new(m, SiteMap::Lattice)
    }

    /// Symmetrizes `(A + A^T) / 2` before validating; for matrices that are
    /// symmetric up to rounding by construction.
    pub(crate) fn symmetrized(entries: DMatrix<f64>, sites: SiteMap) -> Result<Self> {
        let sym = (&entries + entries.transpose()) * 0.5;
        Self::new(sym, sites)
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn sites(&self) -> &SiteMap {
        &self.sites
    }

    /// Entry for 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Principal submatrix on the given 0-based indices.
    pub fn minor(&self, indices: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(indices.len(), indices.len(), |a, b| {
            self.entries[(indices[a], indices[b])]
        })
    }

    /// Row-major copy of the entries.
    pub fn row_major(&self) -> Vec<f64> {
        let n = self.size();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.entries[(i, j)]);
            }
        }
        out
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors (as columns).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralData {
    /// `Q diag(f(lambda)) Q^T`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let mut scaled = self.eigenvectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let s = f(lambda);
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * self.eigenvectors.transpose()
    }

    pub fn reconstruction_error(&self, a: &TruncatedOperator) -> f64 {
        (self.map_eigenvalues(|l| l) - a.entries()).amax()
    }

    pub fn orthogonality_error(&self) -> f64 {
        let n = self.eigenvectors.ncols();
        (self.eigenvectors.transpose() * &self.eigenvectors - DMatrix::identity(n, n)).amax()
    }
}

/// Full eigendecomposition of a symmetric truncated operator.
///
/// Entries below `1e-100` of the largest are flushed to zero first. They
/// cannot move the spectrum at double precision, and the `L` matrices of
/// fast-decaying weights otherwise reach the subnormal range, where the
/// QR iteration stalls.
pub fn symmetric_eig(a: &TruncatedOperator) -> Result<SpectralData> {
    let n = a.size();
    let m = a.entries();
    let floor = 1e-100 * m.amax();
    let flushed = faer::Mat::<f64>::from_fn(n, n, |i, j| {
        let v = m[(i, j)];
        if v.abs() < floor {
            0.0
        } else {
            v
        }
    });
    let evd = flushed
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::NonConvergence {
            what: "symmetric eigendecomposition",
            iterations: 0,
        })?;
    let (values, vectors) = (evd.S(), evd.U());
    // faer returns ascending order
    let eigenvalues = (0..n).rev().map(|k| values[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| vectors[(r, n - 1 - c)]);
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

/// `ln det(I + A)` from the eigenvalues of `A`.
pub fn ln_det_plus_identity(a: &TruncatedOperator) -> Result<f64> {
    let spec = symmetric_eig(a)?;
    let mut acc = 0.0;
    for &lambda in &spec.eigenvalues {
        if lambda <= -1.0 + 1e-14 {
            return Err(Error::Singular(lambda));
        }
        acc += lambda.ln_1p();
    }
    Ok(acc)
}

/// Fredholm determinant `det(I + A) = prod (1 + lambda_i)` of a truncation.
pub fn det_plus_identity(a: &TruncatedOperator) -> Result<f64> {
    ln_det_plus_identity(a).map(f64::exp)
}

/// Determinant of a small dense matrix by LU; `1` for the empty matrix.
pub fn dense_determinant(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        1.0
    } else {
        m.clone().determinant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn op(m: DMatrix<f64>) -> TruncatedOperator {
        TruncatedOperator::new(m, SiteMap::Lattice).unwrap()
    }

    #[test]
    fn eigenvalues_sorted_descending() {
        let d = symmetric_eig(&op(DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0, 2.0])))).unwrap();
        assert_eq!(d.eigenvalues, vec![3.0, 2.0, 1.0]);
        let id = symmetric_eig(&op(DMatrix::identity(3, 3))).unwrap();
        assert_eq!(id.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn det_plus_identity_small_cases() {
        assert_eq!(det_plus_identity(&op(DMatrix::zeros(4, 4))).unwrap(), 1.0);
        let d = det_plus_identity(&op(DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0])))).unwrap();
        assert!((d - 6.0).abs() < 1e-14);
        let bad = op(DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 2.0])));
        assert!(matches!(det_plus_identity(&bad), Err(Error::Singular(_))));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(
            TruncatedOperator::new(m, SiteMap::Lattice),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(dense_determinant(&DMatrix::zeros(0, 0)), 1.0);
    }
}
