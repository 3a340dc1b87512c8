//! Quadrature, dense symmetric linear algebra and finite-difference tools.

mod differences;
mod linalg;
mod quadrature;

pub use differences::{apply_sturm_liouville, richardson_limit, EvenExtrapolation};
pub use linalg::{
    dense_determinant, det_plus_identity, ln_det_plus_identity, symmetric_eig, SiteMap,
    SpectralData, TruncatedOperator,
};
pub use quadrature::{
    circle_integral, double_circle_integral, integrate_half_line, integrate_half_line_real,
    CircleContour,
};
