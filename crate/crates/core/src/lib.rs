//! Determinantal point processes arising from random strict partitions.
//!
//! The crate covers the whole chain from measures on strict partitions to
//! the correlation kernels of the associated point processes:
//!
//! - [`partitions`]: strict partitions, the strict Plancherel measure, its
//!   deformation by a parameter `alpha`, the Poisson and negative-binomial
//!   mixtures, and an exact enumerative sampler.
//! - [`ensemble`]: the weight functions `psi`, the Cauchy-type matrix `L`,
//!   configuration probabilities with Fredholm normalization and
//!   `K = L(1 + L)^-1`.
//! - [`kernels`]: closed forms of the correlation kernels (hypergeometric
//!   series, integrable and contour-integral forms, the Bessel kernel,
//!   the gamma kernel, the Macdonald kernel) and the spectral description
//!   of the continuum kernel.
//! - [`dpp`]: spectral sampling of symmetric determinantal processes and
//!   Monte-Carlo correlation estimates.
//! - [`specfun`] and [`numerics`]: the special-function and numerical layers
//!   everything above is built on.
//! - [`verify`]: the cross-checking harness behind `strict-dpp verify`.
//! - [`cli`]: the `strict-dpp` command line (`eval`, `verify`, `sample`,
//!   `limits`, `export-golden`).
//!
//! Runnable walkthroughs for each area live in `examples/`.

// `!(x > 0.0)` is deliberate: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference values are kept with all the digits they were published with
#![allow(clippy::excessive_precision)]
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod dpp;
pub mod ensemble;
mod error;
pub mod kernels;
pub mod numerics;
pub mod partitions;
pub mod specfun;
pub mod verify;

pub use config::{Tolerances, TOLERANCES};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use partitions::{ModelParams, PlancherelParams, StrictPartition};
pub use specfun::Order;
