//! Mixed and componentwise condition numbers of both QX factors, their cheap upper
//! bounds, and a sampling probe of the underlying supremum.

use serde::{Deserialize, Serialize};

use crate::bounds::{FactorContext, FirstOrderOperators};
use crate::centro::CentroMatrix;
use crate::error::Result;
use crate::linalg::{comp_distance, entrywise_div, inf_norm};
use crate::xops::{upx, xvec};
use crate::{qx_decompose, rng, Matrix, Scalar};

/// Exact condition numbers from the first-order operators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondExact<T> {
    pub mx: T,
    pub cx: T,
    pub mq: T,
    pub cq: T,
    /// `‖|G_Q|·vec(|Q|)‖_∞ / ‖Q‖_max`, a variant weighting by `|Q|` instead of `|A|`.
    pub mq_q_weighted: T,
    /// Index into `xvec` where `mx` and `cx` attain their maxima.
    pub mx_argmax: usize,
    pub cx_argmax: usize,
    /// Index into `vec(Q)` where `mq` and `cq` attain their maxima.
    pub mq_argmax: usize,
    pub cq_argmax: usize,
}

/// Upper bounds that avoid the Kronecker-sized operators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondUpper<T> {
    pub mx_upp: T,
    pub cx_upp: T,
    pub mq_upp: T,
    pub cq_upp: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondReport<T> {
    /// `None` when the operators were not built.
    pub exact: Option<CondExact<T>>,
    pub upper: CondUpper<T>,
}

impl<T: Scalar> CondReport<T> {
    /// Smallest relative slack `(upper − exact)/max(upper, tiny)` over the four pairs.
    pub fn min_relative_slack(&self) -> Option<T> {
        let e = self.exact?;
        let u = self.upper;
        let rel = |ex: T, up: T| (up - ex) / up.max(T::min_positive_value());
        Some(
            rel(e.mx, u.mx_upp)
                .min(rel(e.cx, u.cx_upp))
                .min(rel(e.mq, u.mq_upp))
                .min(rel(e.cq, u.cq_upp)),
        )
    }
}

fn argmax_abs<T: Scalar>(v: &[T]) -> (T, usize) {
    let mut best = (T::zero(), 0);
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best.0 {
            best = (x.abs(), i);
        }
    }
    best
}

pub fn mixed_comp_cond<T: Scalar>(
    a: &Matrix<T>,
    q: &Matrix<T>,
    x: &Matrix<T>,
    ops: &FirstOrderOperators<T>,
) -> Result<CondExact<T>> {
    let abs_a = a.abs().vec();
    let gx = ops.gx.abs();
    let gq = ops.gq.abs();
    let nx = gx.matvec(&abs_a);
    let nq = gq.matvec(&abs_a);
    let xv: Vec<T> = xvec(x)?.iter().map(|v| v.abs()).collect();
    let qv = q.abs().vec();

    let (mx_num, mx_argmax) = argmax_abs(&nx);
    let (cx, cx_argmax) = argmax_abs(&entrywise_div(&nx, &xv));
    let (mq_num, mq_argmax) = argmax_abs(&nq);
    let (cq, cq_argmax) = argmax_abs(&entrywise_div(&nq, &qv));
    Ok(CondExact {
        mx: mx_num / x.max_abs(),
        cx,
        mq: mq_num / q.max_abs(),
        cq,
        mq_q_weighted: inf_norm(&gq.matvec(&qv)) / q.max_abs(),
        mx_argmax,
        cx_argmax,
        mq_argmax,
        cq_argmax,
    })
}

pub fn cond_upper_bounds<T: Scalar>(a: &Matrix<T>, q: &Matrix<T>, x: &Matrix<T>, x_inv: &Matrix<T>) -> Result<CondUpper<T>> {
    let abs_a = a.abs();
    let abs_q = q.abs();
    let abs_x = x.abs();
    let abs_xi = x_inv.abs();
    let left = &(&abs_xi.transpose() * &abs_a.transpose()) * &abs_q;
    let right = &abs_q.t_matmul(&abs_a) * &abs_xi;
    let w = upx(&(&left + &right))?;
    let wx = &w * &abs_x;
    let v = &(&abs_a * &abs_xi) + &(&abs_q * &w);
    Ok(CondUpper {
        mx_upp: wx.max_abs() / x.max_abs(),
        cx_upp: inf_norm(&entrywise_div(&xvec(&wx)?, &xvec(&abs_x)?)),
        mq_upp: v.max_abs() / q.max_abs(),
        cq_upp: inf_norm(&entrywise_div(&v.vec(), &abs_q.vec())),
    })
}

/// Exact values (when operators are available) and upper bounds.
pub fn condition_numbers<T: Scalar>(ctx: &FactorContext<T>, ops: Option<&FirstOrderOperators<T>>) -> Result<CondReport<T>> {
    Ok(CondReport {
        exact: ops
            .map(|o| mixed_comp_cond(&ctx.a, &ctx.q, &ctx.x, o))
            .transpose()?,
        upper: cond_upper_bounds(&ctx.a, &ctx.q, &ctx.x, &ctx.x_inv)?,
    })
}

/// Largest finite-ε ratios observed over random sign patterns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport<T> {
    pub mx: T,
    pub cx: T,
    pub mq: T,
    pub cq: T,
    pub samples: usize,
}

/// Samples `ΔA = eps·(S∘A)` for centrosymmetric sign patterns `S`, refactorizes, and
/// records the largest mixed and componentwise ratios. These lower-bound the condition
/// numbers up to `O(eps)`.
pub fn empirical_cond_probe<T: Scalar>(a: &CentroMatrix<T>, eps: T, seed: u64, trials: usize) -> Result<ProbeReport<T>> {
    let base = qx_decompose(a)?;
    let x0 = xvec(&base.x)?;
    let q0 = base.q.vec();
    let (m, n) = a.shape();
    let mut r = rng::stream(seed, rng::PROBE_STREAM);
    let mut out = ProbeReport {
        mx: T::zero(),
        cx: T::zero(),
        mq: T::zero(),
        cq: T::zero(),
        samples: trials,
    };
    for _ in 0..trials {
        let mut signs = Matrix::zeros(m, n);
        for i in 0..m.div_ceil(2) {
            for j in 0..n {
                if m % 2 == 1 && i == m / 2 && j >= n / 2 {
                    break;
                }
                let s = if rand::Rng::gen_bool(&mut r, 0.5) { T::one() } else { -T::one() };
                signs[(i, j)] = s;
                signs[(m - 1 - i, n - 1 - j)] = s;
            }
        }
        let delta = signs.hadamard(a).scale(eps);
        let perturbed = CentroMatrix::new(a.matrix() + &delta)?;
        let d = comp_distance(&perturbed.vec(), &a.vec());
        if d == T::zero() {
            continue;
        }
        let f = qx_decompose(&perturbed)?;
        let x1 = xvec(&f.x)?;
        let q1 = f.q.vec();
        let dx: Vec<T> = x1.iter().zip(&x0).map(|(&p, &b)| p - b).collect();
        let dq: Vec<T> = q1.iter().zip(&q0).map(|(&p, &b)| p - b).collect();
        out.mx = out.mx.max(inf_norm(&dx) / base.x.max_abs() / d);
        out.cx = out.cx.max(comp_distance(&x1, &x0) / d);
        out.mq = out.mq.max(inf_norm(&dq) / base.q.max_abs() / d);
        out.cq = out.cq.max(comp_distance(&q1, &q0) / d);
    }
    Ok(out)
}
