//! The L-ensemble on the positive integers built from a weight function
//! `psi`: `P(X) = U(X)^2 prod psi(x) / det(1 + L)` with
//! `L(x, y) = 2 sqrt(x y psi(x) psi(y)) / (x + y)`, and its correlation
//! kernel `K = L (1 + L)^-1`.

mod configuration;
mod lensemble;
mod weights;

pub use configuration::{u_factor, PointConfiguration};
pub use lensemble::{
    build_l, config_probability, defining_relation_residual, kernel_from_l, write_operator_json,
    ConfigProbability, LEnsemble, OperatorExport,
};
pub use weights::{psi_nuxi, psi_theta, WeightFunction};
