use crate::bounds::gates::{Bound, Gate, GateStatus};
use crate::bounds::sqrt;
use crate::Scalar;

/// Normwise bounds from the matrix–vector equation and its Lyapunov majorant.
#[derive(Clone, Debug, PartialEq)]
pub struct MatvecNormwise<T> {
    pub gate: GateStatus<T>,
    pub gate_simple: GateStatus<T>,
    /// `2s/(1 + √(1 − 4hs))` with `s = gδ + hδ²`
    pub x_majorant_root: Bound<T>,
    /// `2s`
    pub x_majorant_linearized: Bound<T>,
    /// `(1 + 2g)δ`
    pub x_majorant_simple: Bound<T>,
    /// `1 + 2g`
    pub simple_coefficient: T,
}

/// Bounds from `g = ‖G_X‖₂`, `h = ‖H_X‖₂` and `δ = ‖ΔA‖_F`.
pub fn matvec_bounds_normwise<T: Scalar>(g: T, h: T, delta: T) -> MatvecNormwise<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let s = g * delta + h * delta * delta;
    let gate = GateStatus::new(Gate::NormwiseMajorant, h * s, T::lit(0.25));
    let gate_simple = GateStatus::new(
        Gate::NormwiseMajorantSimple,
        h * (one + two * g) * delta,
        T::half(),
    );
    let radicand = one - T::lit(4.0) * h * s;
    let root = (radicand >= T::zero()).then(|| two * s / (one + radicand.sqrt()));
    MatvecNormwise {
        x_majorant_root: Bound::new(root, gate.satisfied),
        x_majorant_linearized: Bound::new(Some(two * s), gate.satisfied),
        x_majorant_simple: Bound::new(Some((one + two * g) * delta), gate.satisfied),
        simple_coefficient: one + two * g,
        gate,
        gate_simple,
    }
}

/// `(2+√2)·[‖G_Q‖₂ + ‖X⁻ᵀ⊗Q‖₂·(1 + ‖G_X‖₂)]·δ`, using `‖X⁻ᵀ⊗Q‖₂ = ‖X⁻¹‖₂‖Q‖₂`.
pub fn matvec_bound_q<T: Scalar>(gq_norm: T, g: T, norm_x_inv: T, norm_q: T, delta: T) -> T {
    (T::lit(2.0) + sqrt::<T>(2.0)) * (gq_norm + norm_x_inv * norm_q * (T::one() + g)) * delta
}
