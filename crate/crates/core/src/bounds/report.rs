use serde::{Deserialize, Serialize};

use crate::bounds::componentwise::{comp_matvec_bounds, comp_operator_norms, comp_refined_bounds, qkkq, CompOperatorNorms};
use crate::bounds::gates::{Bound, GateStatus};
use crate::bounds::matvec::{matvec_bound_q, matvec_bounds_normwise};
use crate::bounds::operators::FirstOrderOperators;
use crate::bounds::refined::refined_bounds_normwise;
use crate::bounds::tightness::{tightness_check, TightnessReport};
use crate::bounds::FactorContext;
use crate::error::Result;
use crate::linalg::norm2;
use crate::xops::ScalingKind;
use crate::{Matrix, Scalar};

/// Spectral norms of the first-order operators and their absolute-value compositions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorNorms<T> {
    /// `‖G_X‖₂`
    pub gx: T,
    /// `‖H_X‖₂`
    pub hx: T,
    /// `‖G_Q‖₂`
    pub gq: T,
    pub comp: CompOperatorNorms<T>,
}

impl<T: Scalar> OperatorNorms<T> {
    pub fn compute(ops: &FirstOrderOperators<T>, x: &Matrix<T>) -> Result<Self> {
        Ok(Self {
            gx: norm2(&ops.gx)?,
            hx: norm2(&ops.hx)?,
            gq: norm2(&ops.gq)?,
            comp: comp_operator_norms(ops, x)?,
        })
    }
}

/// The seven table quantities `b_ΔX1..4`, `b_ΔQ1..3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Notation<T> {
    /// Componentwise majorant, simple form.
    pub b_dx1: Option<T>,
    /// Componentwise refined bound for `X`.
    pub b_dx2: Option<T>,
    /// Normwise majorant, simple form.
    pub b_dx3: Option<T>,
    /// Normwise refined bound for `X`.
    pub b_dx4: Option<T>,
    /// Componentwise refined bound for `Q`.
    pub b_dq1: Option<T>,
    /// Matrix–vector bound for `Q`.
    pub b_dq2: Option<T>,
    /// Normwise refined bound for `Q`.
    pub b_dq3: Option<T>,
}

/// Every gate and bound for one perturbation of one factorization.
///
/// Normwise bounds are absolute bounds on `‖ΔX‖_F` or `‖ΔQ‖_F` in terms of
/// `delta = ‖ΔA‖_F`; componentwise ones use `eps` from `|ΔA| ≤ eps·K·|A|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    pub delta: T,
    pub eps: T,
    pub gates: Vec<GateStatus<T>>,
    /// Upper estimate of `‖ΔA·A†‖₂`.
    pub rank_margin: T,
    pub operators_skipped: bool,

    pub x_refined: Bound<T>,
    pub x_remark_quadratic: Bound<T>,
    pub x_remark_linear: Bound<T>,
    pub x_first_order: T,
    pub x_majorant_root: Bound<T>,
    pub x_majorant_linearized: Bound<T>,
    pub x_majorant_simple: Bound<T>,
    pub x_comp_printed: Bound<T>,
    pub x_comp_refined: Bound<T>,
    pub x_comp_majorant_root: Bound<T>,
    pub x_comp_majorant_linearized: Bound<T>,
    pub x_comp_majorant_simple: Bound<T>,
    pub x_comp_first_order: Option<T>,
    pub x_comp_combined: Bound<T>,
    pub q_refined: Bound<T>,
    pub q_matvec: Bound<T>,
    pub q_comp_refined: Bound<T>,

    pub x_refined_scaling: ScalingKind,
    pub q_refined_scaling: ScalingKind,
    pub x_comp_refined_scaling: ScalingKind,
    /// `min_D √(1+ς²)·κ₂(D⁻¹X)`
    pub scaled_kappa: T,
    pub operator_norms: Option<OperatorNorms<T>>,
    pub a_hat: Option<T>,
    pub b_hat: Option<T>,
    pub c_hat: Option<T>,
    pub tightness: Option<TightnessReport<T>>,

    /// Table quantities as absolute bounds.
    pub notation: Notation<T>,
    /// Table quantities divided by `delta` (normwise) or `eps` (componentwise).
    pub notation_coefficient: Notation<T>,
}

impl<T: Scalar> BoundReport<T> {
    /// Bounds on `‖ΔX‖_F` that are asserted to dominate the measured change.
    pub fn x_bounds(&self) -> [(&'static str, Bound<T>); 10] {
        [
            ("x_refined", self.x_refined),
            ("x_remark_linear", self.x_remark_linear),
            ("x_majorant_root", self.x_majorant_root),
            ("x_majorant_linearized", self.x_majorant_linearized),
            ("x_majorant_simple", self.x_majorant_simple),
            ("x_comp_refined", self.x_comp_refined),
            ("x_comp_majorant_root", self.x_comp_majorant_root),
            ("x_comp_majorant_linearized", self.x_comp_majorant_linearized),
            ("x_comp_majorant_simple", self.x_comp_majorant_simple),
            ("x_comp_combined", self.x_comp_combined),
        ]
    }

    /// Bounds on `‖ΔX‖_F` that are reported without being asserted.
    pub fn x_bounds_reported(&self) -> [(&'static str, Bound<T>); 2] {
        [
            ("x_remark_quadratic", self.x_remark_quadratic),
            ("x_comp_printed", self.x_comp_printed),
        ]
    }

    /// Bounds on `‖ΔQ‖_F` that are asserted to dominate the measured change.
    pub fn q_bounds(&self) -> [(&'static str, Bound<T>); 3] {
        [
            ("q_refined", self.q_refined),
            ("q_matvec", self.q_matvec),
            ("q_comp_refined", self.q_comp_refined),
        ]
    }

    pub fn gate(&self, gate: crate::bounds::Gate) -> Option<&GateStatus<T>> {
        self.gates.iter().find(|g| g.gate == gate)
    }
}

fn ratio<T: Scalar>(v: Option<T>, by: T) -> Option<T> {
    v.map(|v| if by == T::zero() { T::zero() } else { v / by })
}

/// Evaluates every bound. Operator-based bounds need `op_norms`; without them they are skipped.
pub fn evaluate_bounds<T: Scalar>(
    ctx: &FactorContext<T>,
    delta_a: &Matrix<T>,
    k: &Matrix<T>,
    eps: T,
    op_norms: Option<&OperatorNorms<T>>,
) -> Result<BoundReport<T>> {
    let delta = delta_a.frobenius_norm();
    let refined = refined_bounds_normwise(ctx, delta_a)?;
    let comp = comp_refined_bounds(ctx, k, eps)?;
    let mut gates = vec![refined.gate, comp.gate, comp.gate_combined];

    let skipped = Bound::skipped();
    let (mut mx_root, mut mx_lin, mut mx_simple, mut q_matvec) = (skipped, skipped, skipped, skipped);
    let (mut cx_root, mut cx_lin, mut cx_simple) = (skipped, skipped, skipped);
    let (mut cx_first, mut a_hat, mut b_hat, mut c_hat, mut tightness, mut coef3) = (None, None, None, None, None, None);

    if let Some(norms) = op_norms {
        let mv = matvec_bounds_normwise(norms.gx, norms.hx, delta);
        mx_root = mv.x_majorant_root;
        mx_lin = mv.x_majorant_linearized;
        mx_simple = mv.x_majorant_simple;
        coef3 = Some(mv.simple_coefficient);
        q_matvec = Bound::new(
            Some(matvec_bound_q(norms.gq, norms.gx, ctx.norm_x_inv, ctx.norm_q, delta)),
            mv.gate.satisfied,
        );
        let cm = comp_matvec_bounds(&norms.comp, comp.kq, qkkq(&ctx.q, k), eps);
        cx_root = cm.x_comp_majorant_root;
        cx_lin = cm.x_comp_majorant_linearized;
        cx_simple = cm.x_comp_majorant_simple;
        cx_first = Some(cm.x_comp_first_order);
        a_hat = Some(cm.a_hat);
        b_hat = Some(cm.b_hat);
        c_hat = Some(cm.c_hat);
        tightness = Some(tightness_check(norms.gx, refined.scaled_kappa));
        gates.extend([mv.gate, mv.gate_simple, cm.gate, cm.gate_simple]);
    }

    let notation = Notation {
        b_dx1: cx_simple.value,
        b_dx2: comp.x_comp_refined.value,
        b_dx3: mx_simple.value,
        b_dx4: refined.x_refined.value,
        b_dq1: comp.q_comp_refined.value,
        b_dq2: q_matvec.value,
        b_dq3: refined.q_refined.value,
    };
    let notation_coefficient = Notation {
        b_dx1: ratio(notation.b_dx1, eps),
        b_dx2: ratio(notation.b_dx2, eps),
        b_dx3: coef3,
        b_dx4: ratio(notation.b_dx4, delta),
        b_dq1: ratio(notation.b_dq1, eps),
        b_dq2: ratio(notation.b_dq2, delta),
        b_dq3: ratio(notation.b_dq3, delta),
    };

    Ok(BoundReport {
        delta,
        eps,
        gates,
        rank_margin: refined.rank_margin,
        operators_skipped: op_norms.is_none(),
        x_refined: refined.x_refined,
        x_remark_quadratic: refined.x_remark_quadratic,
        x_remark_linear: refined.x_remark_linear,
        x_first_order: refined.x_first_order,
        x_majorant_root: mx_root,
        x_majorant_linearized: mx_lin,
        x_majorant_simple: mx_simple,
        x_comp_printed: comp.x_comp_printed,
        x_comp_refined: comp.x_comp_refined,
        x_comp_majorant_root: cx_root,
        x_comp_majorant_linearized: cx_lin,
        x_comp_majorant_simple: cx_simple,
        x_comp_first_order: cx_first,
        x_comp_combined: comp.x_comp_combined,
        q_refined: refined.q_refined,
        q_matvec,
        q_comp_refined: comp.q_comp_refined,
        x_refined_scaling: refined.scaled_kappa_scaling,
        q_refined_scaling: refined.q_refined_scaling,
        x_comp_refined_scaling: comp.x_comp_refined_scaling,
        scaled_kappa: refined.scaled_kappa,
        operator_norms: op_norms.copied(),
        a_hat,
        b_hat,
        c_hat,
        tightness,
        notation,
        notation_coefficient,
    })
}
