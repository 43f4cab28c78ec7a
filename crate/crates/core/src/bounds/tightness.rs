use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Comparison of `‖G_X‖₂` with the scaled condition number of the refined bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport<T> {
    pub gx_norm: T,
    pub scaled_kappa: T,
    /// `scaled_kappa − gx_norm`; nonnegative up to rounding.
    pub slack: T,
}

impl<T: Scalar> TightnessReport<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.gx_norm <= self.scaled_kappa + tol
    }
}

/// `‖G_X‖₂ ≤ min_D √(1+ς²)·κ₂(D⁻¹X)`.
pub fn tightness_check<T: Scalar>(gx_norm: T, scaled_kappa: T) -> TightnessReport<T> {
    TightnessReport {
        gx_norm,
        scaled_kappa,
        slack: scaled_kappa - gx_norm,
    }
}
