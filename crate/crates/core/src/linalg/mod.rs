//! Dense kernel: matrices, QR, Kronecker machinery, norms and triangular solves.

pub mod entrywise;
pub mod kron;
pub mod matrix;
pub mod norms;
pub mod qr;
pub mod triangular;

pub use entrywise::{comp_distance, entrywise_div, inf_norm, two_norm};
pub use kron::{kron, vec, vec_perm};
pub use matrix::Matrix;
pub use norms::{norm2, spectral_norm, FnMap, LinearMap};
pub use qr::{householder_qr, ThinQr};
pub use triangular::{triangular_inverse, triangular_solve};
