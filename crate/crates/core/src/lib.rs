//! Finite mixtures of von Mises regressions with circular and linear
//! covariates.
//!
//! The model for a circular response `θ` given covariates `x` is
//!
//! ```text
//! θ | x ~ Σ_k π_k · VM(μ_k + 2·atan(x*ᵀB_k), κ_k)
//! ```
//!
//! where `x*` replaces every circular covariate by its `(cos, sin)` pair.
//! Fitting uses EM with closed-form μ/κ updates and damped Newton–Raphson on
//! the coefficients; see [`mixture::em_fit`] and [`mixture::multi_start_fit`].

pub mod bootstrap;
pub mod circular;
pub mod cli;
pub mod data;
pub mod error;
pub mod eval;
mod linalg;
pub mod mixture;
pub mod regression;
pub mod rng;
pub mod simulate;
pub mod special;

pub use circular::{Angle, CovariateRow};
pub use data::Dataset;
pub use error::{Error, Result};
pub use mixture::{ComponentParams, MixtureFit, MixtureParams};

pub use special::Concentration;
