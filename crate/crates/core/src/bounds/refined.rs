use crate::bounds::gates::{gate_normwise, Bound, GateStatus};
use crate::bounds::{sqrt, FactorContext};
use crate::error::Result;
use crate::linalg::norm2;
use crate::xops::ScalingKind;
use crate::{Matrix, Scalar};

/// Normwise bounds from the refined matrix-equation argument.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedNormwise<T> {
    pub gate: GateStatus<T>,
    /// `‖ΔA‖₂·‖X⁻¹‖₂`, an upper estimate of `‖ΔA·A†‖₂` which must stay below 1.
    pub rank_margin: T,
    /// `min_D √(1+ς²)·κ₂(D⁻¹X)`
    pub scaled_kappa: T,
    pub scaled_kappa_scaling: ScalingKind,
    /// `(√6+√3)·min_D[√(1+ς²)κ₂(D⁻¹X)]·‖Q‖₂·δ`
    pub x_refined: Bound<T>,
    /// `(2√2+2)·min_D[‖QD⁻¹‖₂‖X⁻¹D‖₂]·‖Q‖₂·δ + (2√3+√6)·‖QᵀΔAX⁻¹‖_F`
    pub q_refined: Bound<T>,
    pub q_refined_scaling: ScalingKind,
    /// Remark bound with the `‖QᵀΔA‖_F/‖A‖_F` numerator.
    pub x_remark_quadratic: Bound<T>,
    /// Remark bound with the `δ/‖A‖₂` numerator.
    pub x_remark_linear: Bound<T>,
    /// First-order estimate `min_D[√(1+ς²)κ₂(D⁻¹X)]·‖Q‖₂·δ`.
    pub x_first_order: T,
}

pub fn refined_bounds_normwise<T: Scalar>(
    ctx: &FactorContext<T>,
    delta_a: &Matrix<T>,
) -> Result<RefinedNormwise<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let delta = delta_a.frobenius_norm();
    let gate = gate_normwise(&ctx.q, &ctx.x_inv, delta_a);
    let rank_margin = if delta == T::zero() {
        T::zero()
    } else {
        norm2(delta_a)? * ctx.norm_x_inv
    };
    let holds = gate.satisfied && rank_margin < one;

    let (scaled_kappa, scaled_kappa_scaling) = ctx.min_over_scalings(|d| {
        let s = d.varsigma();
        let dx = &d.inverse_matrix() * &ctx.x;
        let xd = &ctx.x_inv * &d.matrix();
        Ok((one + s * s).sqrt() * norm2(&dx)? * norm2(&xd)?)
    })?;
    let (q_scale, q_refined_scaling) = ctx.min_over_scalings(|d| {
        let qd = &ctx.q * &d.inverse_matrix();
        let xd = &ctx.x_inv * &d.matrix();
        Ok(norm2(&qd)? * norm2(&xd)?)
    })?;

    let x_first_order = scaled_kappa * ctx.norm_q * delta;
    let x_refined = (sqrt::<T>(6.0) + sqrt::<T>(3.0)) * x_first_order;
    let q_refined = (two * sqrt::<T>(2.0) + two) * q_scale * ctx.norm_q * delta
        + (two * sqrt::<T>(3.0) + sqrt::<T>(6.0)) * gate.value;

    // ‖A‖₂ = ‖X‖₂ and ‖A‖_F = ‖X‖_F because Q has orthonormal columns.
    let norm_a2 = ctx.norm_x;
    let norm_af = ctx.x.frobenius_norm();
    let k = ctx.kappa2;
    let t = delta / norm_a2;
    let radicand = one - T::lit(4.0) * k * t - two * k * k * t * t;
    let denom = (sqrt::<T>(2.0) - one) + radicand.max(T::zero()).sqrt();
    let defined = radicand >= T::zero();
    let qt_da = ctx.q.t_matmul(delta_a).frobenius_norm();
    let quadratic = ctx.norm_x * sqrt::<T>(2.0) * scaled_kappa * (qt_da / norm_af + k * t * t) / denom;
    let linear = ctx.norm_x * sqrt::<T>(3.0) * scaled_kappa * t / denom;

    Ok(RefinedNormwise {
        gate,
        rank_margin,
        scaled_kappa,
        scaled_kappa_scaling,
        x_refined: Bound::new(Some(x_refined), holds),
        q_refined: Bound::new(Some(q_refined), holds),
        q_refined_scaling,
        x_remark_quadratic: Bound::new(defined.then_some(quadratic), holds),
        x_remark_linear: Bound::new(defined.then_some(linear), holds),
        x_first_order,
    })
}
