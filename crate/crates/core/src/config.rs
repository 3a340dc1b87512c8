//! Truncation thresholds and tolerances used across the crate.
//!
//! Everything that decides when a series, a quadrature or a truncated
//! operator is "good enough" reads from [`TOLERANCES`], so output metadata
//! can echo the exact settings a value was produced with.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative tail bound at which the Gauss hypergeometric series stops.
    pub hypergeometric_tail: f64,
    /// Hard cap on hypergeometric series terms.
    pub hypergeometric_max_terms: usize,
    /// Relative size below which a Macdonald-integral node is dropped.
    pub quadrature_tail: f64,
    /// Relative change between refinements accepted by half-line quadrature.
    pub half_line_rel: f64,
    /// Relative tail bound for the series representation of the lattice kernel.
    pub kernel_series_tail: f64,
    /// Hard cap on terms of the lattice kernel series.
    pub kernel_series_max_terms: usize,
    /// Largest `xi` for which lattice diagonals are summed as a series;
    /// above it they are obtained by Richardson extrapolation.
    pub series_diagonal_xi_max: f64,
    /// Allowed `|Im| / (1 + |Re|)` for results that must be real.
    pub realness: f64,
    /// Realness tolerance for the contour-integral kernels.
    pub contour_realness: f64,
    /// Relative change between node doublings accepted on circle contours.
    pub circle_rel: f64,
    /// Node cap for single circle integrals.
    pub circle_node_cap: usize,
    /// Node cap (per variable) for double circle integrals.
    pub double_circle_node_cap: usize,
    /// Step of the five-point finite-difference stencils.
    pub finite_difference_step: f64,
    /// Base offset for Richardson extrapolation of diagonal kernel values.
    pub richardson_base: f64,
    /// Symmetry tolerance for truncated operators.
    pub symmetry: f64,
    /// Lower floor for eigenvalues of positive semidefinite operators.
    pub psd_floor: f64,
    /// Tail mass of `psi` beyond the lattice window.
    pub window_tail: f64,
    /// Tail mass of the mixing law beyond the enumeration cap.
    pub mixing_tail: f64,
    /// Default largest weight for strict partition enumeration.
    pub enumeration_cap: usize,
    /// Diagonal residuals below this are clamped to zero in the DPP sampler.
    pub sampler_floor: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    hypergeometric_tail: 1e-16,
    hypergeometric_max_terms: 1_000_000,
    quadrature_tail: 1e-18,
    half_line_rel: 1e-13,
    kernel_series_tail: 1e-18,
    kernel_series_max_terms: 200_000,
    series_diagonal_xi_max: 0.95,
    realness: 1e-10,
    contour_realness: 1e-8,
    circle_rel: 1e-9,
    circle_node_cap: 1 << 14,
    double_circle_node_cap: 1 << 10,
    finite_difference_step: 1e-3,
    richardson_base: 0.02,
    symmetry: 1e-12,
    psd_floor: 1e-12,
    window_tail: 1e-14,
    mixing_tail: 1e-9,
    enumeration_cap: 60,
    sampler_floor: 1e-14,
};
