use serde::{Deserialize, Serialize};

use crate::bounds::{build_first_order_operators, DEFAULT_SIZE_CAP};
use crate::centro::{random_centro, CentroMatrix};
use crate::error::{Error, Result};
use crate::linalg::two_norm;
use crate::qx::x_inverse;
use crate::xops::xvec;
use crate::{qx_decompose, rng};

/// Linearization residuals at one perturbation size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdLevel {
    pub eps: f64,
    /// `‖ΔA‖_F`
    pub delta: f64,
    /// `‖xvec(ΔX) − G_X·vec(ΔA)‖₂ / ‖ΔA‖_F`
    pub r_x: f64,
    /// `‖vec(ΔQ) − G_Q·vec(ΔA)‖₂ / ‖ΔA‖_F`
    pub r_q: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdCheckReport {
    pub m: usize,
    pub n: usize,
    pub levels: Vec<FdLevel>,
    /// `r_x(eps_k) / r_x(eps_{k+1})` for consecutive levels.
    pub ratios_x: Vec<f64>,
    pub ratios_q: Vec<f64>,
}

impl FdCheckReport {
    /// Whether every consecutive ratio lies in `[lo, hi]`.
    pub fn ratios_within(&self, lo: f64, hi: f64) -> bool {
        self.ratios_x
            .iter()
            .chain(&self.ratios_q)
            .all(|r| (lo..=hi).contains(r))
    }
}

fn validate_ladder(eps_list: &[f64]) -> Result<()> {
    if eps_list.is_empty() {
        return Err(Error::InvalidArgument("eps list is empty".into()));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e <= 1e-4)) {
        return Err(Error::InvalidArgument("eps values must lie in (0, 1e-4]".into()));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("eps list must be strictly decreasing".into()));
    }
    Ok(())
}

/// Compares the first-order operators with actual factor changes along a random
/// centrosymmetric direction of a random `m×n` matrix.
pub fn fd_check(m: usize, n: usize, seed: u64, eps_list: &[f64]) -> Result<FdCheckReport> {
    let a = random_centro::<f64>(m, n, seed)?;
    let dir = random_centro::<f64>(m, n, rng::child_seed(seed, 0))?;
    fd_check_along(&a, &dir, eps_list)
}

/// Same as [`fd_check`] for a given matrix and direction; `ΔA = eps·dir`.
pub fn fd_check_along(a: &CentroMatrix<f64>, dir: &CentroMatrix<f64>, eps_list: &[f64]) -> Result<FdCheckReport> {
    validate_ladder(eps_list)?;
    if a.shape() != dir.shape() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", a.rows(), a.cols()),
            found: format!("{}x{}", dir.rows(), dir.cols()),
        });
    }
    let (m, n) = a.shape();
    let f = qx_decompose(a)?;
    let x_inv = x_inverse(&f.x)?;
    let ops = build_first_order_operators(&f.q, &f.x, &x_inv, DEFAULT_SIZE_CAP.max(m * n))?;
    let x0 = xvec(&f.x)?;
    let q0 = f.q.vec();
    let dvec = dir.vec();
    let gx_d = ops.gx.matvec(&dvec);
    let gq_d = ops.gq.matvec(&dvec);

    let mut levels = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let delta_a = CentroMatrix::new(dir.scale(eps))?;
        let delta = delta_a.frobenius_norm();
        let ft = qx_decompose(&a.plus(&delta_a))?;
        let x1 = xvec(&ft.x)?;
        let q1 = ft.q.vec();
        let res_x: Vec<f64> = (0..x0.len()).map(|k| x1[k] - x0[k] - eps * gx_d[k]).collect();
        let res_q: Vec<f64> = (0..q0.len()).map(|k| q1[k] - q0[k] - eps * gq_d[k]).collect();
        levels.push(FdLevel {
            eps,
            delta,
            r_x: two_norm(&res_x) / delta,
            r_q: two_norm(&res_q) / delta,
        });
    }
    let ratio = |f: fn(&FdLevel) -> f64| -> Vec<f64> {
        levels.windows(2).map(|w| f(&w[0]) / f(&w[1])).collect()
    };
    Ok(FdCheckReport {
        m,
        n,
        ratios_x: ratio(|l| l.r_x),
        ratios_q: ratio(|l| l.r_q),
        levels,
    })
}
