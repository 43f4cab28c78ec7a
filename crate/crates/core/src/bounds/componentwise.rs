use serde::{Deserialize, Serialize};

use crate::bounds::gates::{Bound, Gate, GateStatus};
use crate::bounds::operators::FirstOrderOperators;
use crate::bounds::{sqrt, FactorContext};
use crate::error::Result;
use crate::linalg::{norm2, FnMap};
use crate::xops::ScalingKind;
use crate::{Matrix, Scalar};

/// Componentwise bounds from the refined matrix-equation argument.
#[derive(Clone, Debug, PartialEq)]
pub struct CompRefined<T> {
    pub gate: GateStatus<T>,
    pub gate_combined: GateStatus<T>,
    /// `‖|Qᵀ|·K·|Q|‖_F`
    pub qkq: T,
    /// `‖K·|Q|‖_F`
    pub kq: T,
    /// The `(√2 − 1)`-denominator variant using `‖|X|X⁻¹D‖₂`; reported, never asserted.
    pub x_comp_printed: Bound<T>,
    /// `(√3+√6)·min_D[√(1+ς²)‖|X||X⁻¹|D‖₂‖D⁻¹X‖₂]·‖|Qᵀ|K|Q|‖_F·ε`
    pub x_comp_refined: Bound<T>,
    pub x_comp_refined_scaling: ScalingKind,
    /// `(√6+2+2√2+2√3)·‖|Qᵀ|K|Q|‖_F·cond(X)·ε`
    pub q_comp_refined: Bound<T>,
    /// `(√6+√3)·min_D[√(1+ς²)‖D⁻¹X‖₂‖|X||X⁻¹|D‖₂]·‖K|Q|‖_F·ε`
    pub x_comp_combined: Bound<T>,
}

pub fn comp_refined_bounds<T: Scalar>(ctx: &FactorContext<T>, k: &Matrix<T>, eps: T) -> Result<CompRefined<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let abs_q = ctx.q.abs();
    let kq = &k.abs() * &abs_q;
    let qkq = abs_q.t_matmul(&kq).frobenius_norm();
    let kq = kq.frobenius_norm();

    let gate = GateStatus::new(
        Gate::CompRefined,
        qkq * ctx.cond_x * eps,
        one / (sqrt::<T>(6.0) + two),
    );
    let gate_combined = GateStatus::new(
        Gate::CompCombined,
        ctx.cond_x * kq * eps,
        T::lit(1.5).sqrt() - one,
    );

    let abs_x = ctx.x.abs();
    let abs_prod = &abs_x * &ctx.x_inv.abs();
    let signed_prod = &abs_x * &ctx.x_inv;

    let (scaled, scaling) = ctx.min_over_scalings(|d| {
        let s = d.varsigma();
        Ok((one + s * s).sqrt() * norm2(&(&abs_prod * &d.matrix()))? * norm2(&(&d.inverse_matrix() * &ctx.x))?)
    })?;
    let printed = {
        let mut best: Option<T> = None;
        for d in &ctx.scalings {
            let s = d.varsigma();
            let v = norm2(&(&signed_prod * &d.matrix()))?
                * ((two + two * s * s).sqrt() * qkq + (sqrt::<T>(3.0) - sqrt::<T>(2.0)) * qkq)
                * eps
                / (sqrt::<T>(2.0) - one);
            best = Some(best.map_or(v, |b: T| b.min(v)));
        }
        best.expect("scaling candidates")
    };

    let x_comp_refined = (sqrt::<T>(3.0) + sqrt::<T>(6.0)) * scaled * qkq * eps;
    let q_comp_refined = (sqrt::<T>(6.0) + two + two * sqrt::<T>(2.0) + two * sqrt::<T>(3.0)) * qkq * ctx.cond_x * eps;
    let x_comp_combined = (sqrt::<T>(6.0) + sqrt::<T>(3.0)) * scaled * kq * eps;

    Ok(CompRefined {
        x_comp_printed: Bound::new(Some(printed), gate.satisfied),
        x_comp_refined: Bound::new(Some(x_comp_refined), gate.satisfied),
        x_comp_refined_scaling: scaling,
        q_comp_refined: Bound::new(Some(q_comp_refined), gate.satisfied),
        x_comp_combined: Bound::new(Some(x_comp_combined), gate_combined.satisfied),
        gate,
        gate_combined,
        qkq,
        kq,
    })
}

/// Operator norms entering the componentwise majorant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompOperatorNorms<T> {
    /// `‖|G_X|·(|Xᵀ|⊗I_m)‖₂`
    pub gx_abs: T,
    /// `‖|H_X|·(|Xᵀ|⊗|Xᵀ|)‖₂`
    pub hx_abs: T,
    /// `ĉ = ‖|H_X|‖₂`
    pub c_hat: T,
    /// `‖|X|‖₂`
    pub abs_x: T,
}

/// `vec(V) ↦ vec(V·B)` for `V` with `rows` rows.
fn right_mul<T: Scalar>(v: &[T], rows: usize, b: &Matrix<T>) -> Vec<T> {
    (&Matrix::from_col_major(rows, b.rows(), v) * b).vec()
}

pub fn comp_operator_norms<T: Scalar>(ops: &FirstOrderOperators<T>, x: &Matrix<T>) -> Result<CompOperatorNorms<T>> {
    let (m, n) = (ops.m, ops.n);
    let abs_x = x.abs();
    let abs_xt = abs_x.transpose();
    let gx = ops.gx.abs();
    let hx = ops.hx.abs();

    let gx_map = FnMap {
        rows: gx.rows(),
        cols: m * n,
        apply: |v: &[T]| gx.matvec(&right_mul(v, m, &abs_x)),
        apply_transpose: |y: &[T]| right_mul(&gx.t_matvec(y), m, &abs_xt),
    };
    let hx_map = FnMap {
        rows: hx.rows(),
        cols: n * n,
        apply: |v: &[T]| {
            let vm = Matrix::from_col_major(n, n, v);
            hx.matvec(&(&(&abs_xt * &vm) * &abs_x).vec())
        },
        apply_transpose: |y: &[T]| {
            let zm = Matrix::from_col_major(n, n, &hx.t_matvec(y));
            (&(&abs_x * &zm) * &abs_xt).vec()
        },
    };
    Ok(CompOperatorNorms {
        gx_abs: norm2(&gx_map)?,
        hx_abs: norm2(&hx_map)?,
        c_hat: norm2(&hx)?,
        abs_x: norm2(&abs_x)?,
    })
}

/// Componentwise bounds from the matrix–vector equation and its Lyapunov majorant.
#[derive(Clone, Debug, PartialEq)]
pub struct CompMatvec<T> {
    pub a_hat: T,
    pub b_hat: T,
    pub c_hat: T,
    pub gate: GateStatus<T>,
    pub gate_simple: GateStatus<T>,
    /// `2s/(1 + √(1 − 4ĉs))` with `s = âε + b̂ε²`
    pub x_comp_majorant_root: Bound<T>,
    /// `2s`
    pub x_comp_majorant_linearized: Bound<T>,
    /// `(‖|X|‖₂ + 2‖|G_X||Xᵀ⊗I|‖₂)·‖K|Q|‖_F·ε`
    pub x_comp_majorant_simple: Bound<T>,
    /// `âε`
    pub x_comp_first_order: T,
}

/// `kq = ‖K|Q|‖_F` and `qkkq = ‖|Qᵀ|KᵀK|Q|‖_F`.
pub fn comp_matvec_bounds<T: Scalar>(norms: &CompOperatorNorms<T>, kq: T, qkkq: T, eps: T) -> CompMatvec<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let a_hat = norms.gx_abs * kq;
    let b_hat = norms.hx_abs * qkkq;
    let c_hat = norms.c_hat;
    let s = a_hat * eps + b_hat * eps * eps;
    let gate = GateStatus::new(Gate::CompMajorant, c_hat * s, T::lit(0.25));
    let simple_coef = (norms.abs_x + two * norms.gx_abs) * kq;
    let gate_simple = GateStatus::new(Gate::CompMajorantSimple, c_hat * simple_coef * eps, T::half());
    let radicand = one - T::lit(4.0) * c_hat * s;
    let root = (radicand >= T::zero()).then(|| two * s / (one + radicand.sqrt()));
    CompMatvec {
        a_hat,
        b_hat,
        c_hat,
        x_comp_majorant_root: Bound::new(root, gate.satisfied),
        x_comp_majorant_linearized: Bound::new(Some(two * s), gate.satisfied),
        x_comp_majorant_simple: Bound::new(Some(simple_coef * eps), gate.satisfied),
        x_comp_first_order: a_hat * eps,
        gate,
        gate_simple,
    }
}

/// `‖|Qᵀ|·KᵀK·|Q|‖_F`
pub fn qkkq<T: Scalar>(q: &Matrix<T>, k: &Matrix<T>) -> T {
    let kq = &k.abs() * &q.abs();
    kq.t_matmul(&kq).frobenius_norm()
}
