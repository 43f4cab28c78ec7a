use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Matrix, Scalar};

/// The applicability conditions of the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    /// `‖QᵀΔAX⁻¹‖_F ≤ √(3/2) − 1`
    NormwiseRefined,
    /// `h(gδ + hδ²) < ¼`
    NormwiseMajorant,
    /// `h(1 + 2g)δ < ½`
    NormwiseMajorantSimple,
    /// `‖|Qᵀ|K|Q|‖_F·cond(X)·ε < 1/(√6 + 2)`
    CompRefined,
    /// `ĉ(âε + b̂ε²) ≤ ¼`
    CompMajorant,
    /// `ĉ(‖|X|‖₂ + 2‖|G_X||Xᵀ⊗I|‖₂)‖K|Q|‖_F·ε ≤ ½`
    CompMajorantSimple,
    /// `‖|X||X⁻¹|‖₂·‖K|Q|‖_F·ε ≤ √(3/2) − 1`
    CompCombined,
}

impl Gate {
    pub fn name(self) -> &'static str {
        match self {
            Gate::NormwiseRefined => "normwise_refined",
            Gate::NormwiseMajorant => "normwise_majorant",
            Gate::NormwiseMajorantSimple => "normwise_majorant_simple",
            Gate::CompRefined => "comp_refined",
            Gate::CompMajorant => "comp_majorant",
            Gate::CompMajorantSimple => "comp_majorant_simple",
            Gate::CompCombined => "comp_combined",
        }
    }

    /// Whether the gate is a strict inequality.
    pub fn strict(self) -> bool {
        matches!(
            self,
            Gate::NormwiseMajorant | Gate::NormwiseMajorantSimple | Gate::CompRefined
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateStatus<T> {
    pub gate: Gate,
    pub value: T,
    pub threshold: T,
    pub satisfied: bool,
}

impl<T: Scalar> GateStatus<T> {
    pub fn new(gate: Gate, value: T, threshold: T) -> Self {
        let satisfied = if gate.strict() {
            value < threshold
        } else {
            value <= threshold
        };
        Self {
            gate,
            value,
            threshold,
            satisfied,
        }
    }

    /// `Err(GateViolated)` unless the gate holds.
    pub fn check(&self) -> Result<()> {
        if self.satisfied {
            Ok(())
        } else {
            Err(Error::GateViolated {
                gate: self.gate.name().into(),
                value: self.value.to_f64_lossy(),
                threshold: self.threshold.to_f64_lossy(),
            })
        }
    }
}

/// A bound value together with whether its hypotheses hold.
///
/// `value` is `None` when the expression is undefined (negative radicand) or was not
/// computed (operator size cap).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound<T> {
    pub value: Option<T>,
    pub applicable: bool,
}

impl<T: Scalar> Bound<T> {
    pub fn new(value: Option<T>, gate_holds: bool) -> Self {
        Self {
            applicable: gate_holds && value.is_some(),
            value,
        }
    }

    pub fn skipped() -> Self {
        Self {
            value: None,
            applicable: false,
        }
    }

    /// The value when the bound applies.
    pub fn get(&self) -> Option<T> {
        if self.applicable {
            self.value
        } else {
            None
        }
    }

    /// Whether an applicable bound fails to cover `measured` (with absolute slack `tol`).
    pub fn violated_by(&self, measured: T, tol: T) -> bool {
        self.get().is_some_and(|b| measured > b + tol)
    }
}

/// Gate for the refined normwise bounds: `‖QᵀΔAX⁻¹‖_F ≤ √(3/2) − 1`.
pub fn gate_normwise<T: Scalar>(q: &Matrix<T>, x_inv: &Matrix<T>, delta_a: &Matrix<T>) -> GateStatus<T> {
    let w = &q.t_matmul(delta_a) * x_inv;
    GateStatus::new(
        Gate::NormwiseRefined,
        w.frobenius_norm(),
        T::lit(1.5).sqrt() - T::one(),
    )
}
