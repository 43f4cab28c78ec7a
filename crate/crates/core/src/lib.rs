//! Structure-preserving QX decomposition of centrosymmetric matrices, with rigorous
//! perturbation bounds, their applicability gates, and mixed/componentwise condition
//! numbers of both factors.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases at
//! the crate root fix the type used by the experiment harness.

pub mod bounds;
pub mod centro;
pub mod condnum;
pub mod error;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod qx;
pub mod rng;
mod scalar;
pub mod xops;

pub use centro::{CentroMatrix, KMode};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use qx::{qx_decompose, QxFactors};
pub use scalar::Scalar;

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type CentroMatrix64 = CentroMatrix<f64>;
pub type QxFactors64 = QxFactors<f64>;
