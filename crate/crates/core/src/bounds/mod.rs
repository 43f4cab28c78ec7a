//! Rigorous perturbation bounds for both QX factors, their applicability gates, and the
//! first-order operators they are built from.

mod componentwise;
mod gates;
mod matvec;
mod operators;
mod refined;
mod report;
mod tightness;

pub use componentwise::{
    comp_matvec_bounds, comp_operator_norms, comp_refined_bounds, qkkq, CompMatvec, CompOperatorNorms,
    CompRefined,
};
pub use gates::{gate_normwise, Bound, Gate, GateStatus};
pub use matvec::{matvec_bound_q, matvec_bounds_normwise, MatvecNormwise};
pub use operators::{build_first_order_operators, FirstOrderOperators, DEFAULT_SIZE_CAP};
pub use refined::{refined_bounds_normwise, RefinedNormwise};
pub use report::{evaluate_bounds, BoundReport, Notation, OperatorNorms};
pub use tightness::{tightness_check, TightnessReport};

use crate::error::Result;
use crate::linalg::norm2;
use crate::qx::{x_inverse, QxFactors};
use crate::xops::{scaling_candidates, ScalingD, ScalingKind};
use crate::{Matrix, Scalar};

/// Quantities of an unperturbed factorization shared by every bound.
#[derive(Clone, Debug)]
pub struct FactorContext<T> {
    pub a: Matrix<T>,
    pub q: Matrix<T>,
    pub x: Matrix<T>,
    pub x_inv: Matrix<T>,
    /// `‖Q‖₂`
    pub norm_q: T,
    /// `‖X‖₂`, which equals `‖A‖₂`.
    pub norm_x: T,
    /// `‖X⁻¹‖₂`, which equals `‖A†‖₂`.
    pub norm_x_inv: T,
    pub kappa2: T,
    /// `‖|X|·|X⁻¹|‖₂`
    pub cond_x: T,
    /// Candidates for the infimum over diagonal scalings.
    pub scalings: Vec<ScalingD<T>>,
}

impl<T: Scalar> FactorContext<T> {
    pub fn new(a: &Matrix<T>, f: &QxFactors<T>) -> Result<Self> {
        let x_inv = x_inverse(&f.x)?;
        let norm_x = norm2(&f.x)?;
        let norm_x_inv = norm2(&x_inv)?;
        Ok(Self {
            a: a.clone(),
            q: f.q.clone(),
            x: f.x.clone(),
            norm_q: norm2(&f.q)?,
            norm_x,
            norm_x_inv,
            kappa2: norm_x * norm_x_inv,
            cond_x: norm2(&(&f.x.abs() * &x_inv.abs()))?,
            scalings: scaling_candidates(&f.x)?,
            x_inv,
        })
    }

    pub fn m(&self) -> usize {
        self.q.rows()
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    /// Smallest value of `f(D)` over the scaling candidates, with the winning kind.
    pub(crate) fn min_over_scalings(
        &self,
        mut f: impl FnMut(&ScalingD<T>) -> Result<T>,
    ) -> Result<(T, ScalingKind)> {
        let mut best: Option<(T, ScalingKind)> = None;
        for d in &self.scalings {
            let v = f(d)?;
            if best.map_or(true, |(b, _)| v < b) {
                best = Some((v, d.kind));
            }
        }
        Ok(best.expect("at least one scaling candidate"))
    }
}

pub(crate) fn sqrt<T: Scalar>(x: f64) -> T {
    T::lit(x).sqrt()
}
