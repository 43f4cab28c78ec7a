//! Thin QX decomposition `A = Q·X` of a centrosymmetric matrix.

use serde::{Deserialize, Serialize};

use crate::centro::{self, fold, fold_basis, is_centrosymmetric, CentroMatrix, FoldedPair};
use crate::error::{Error, Result};
use crate::linalg::{householder_qr, norm2, triangular_inverse};
use crate::xops::{in_support, off_support_max};
use crate::{Matrix, Scalar};

/// `Q` (`m×n`, column perplectic orthogonal) and `X` (`n×n`, double-cone centrosymmetric).
#[derive(Clone, Debug, PartialEq)]
pub struct QxFactors<T> {
    pub q: Matrix<T>,
    pub x: Matrix<T>,
}

/// Reassembles an X-type matrix from the two triangular blocks of its fold:
/// `½·[[R_F+R_G, (R_F−R_G)·R_l], [R_l·(R_F−R_G), R_l·(R_F+R_G)·R_l]]`.
/// Entries off the double cone come out as exact zeros.
pub fn assemble_x<T: Scalar>(rf: &Matrix<T>, rg: &Matrix<T>) -> Matrix<T> {
    let l = rf.rows();
    let n = 2 * l;
    let half = T::half();
    let sum = |i: usize, j: usize| half * (rf[(i, j)] + rg[(i, j)]);
    let diff = |i: usize, j: usize| half * (rf[(i, j)] - rg[(i, j)]);
    Matrix::from_fn(n, n, |i, j| {
        let v = match (i < l, j < l) {
            (true, true) => sum(i, j),
            (true, false) => diff(i, n - 1 - j),
            (false, true) => diff(n - 1 - i, j),
            (false, false) => sum(n - 1 - i, n - 1 - j),
        };
        if in_support(n, i, j) {
            v
        } else {
            T::zero()
        }
    })
}

pub fn qx_decompose<T: Scalar>(a: &CentroMatrix<T>) -> Result<QxFactors<T>> {
    let (m, n) = a.shape();
    let FoldedPair { f, g } = fold(a)?;
    let qf = householder_qr(&f)?;
    let qg = householder_qr(&g)?;
    let qm = fold_basis::<T>(m).b;
    let qn = fold_basis::<T>(n).b;
    let q = &(&qm * &Matrix::block_diag(&qf.q, &qg.q)) * &qn.transpose();
    Ok(QxFactors {
        q,
        x: assemble_x(&qf.r, &qg.r),
    })
}

/// Triangular blocks `(R_F, R_G)` of an X-type matrix.
pub fn x_blocks<T: Scalar>(x: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = x.rows();
    if !x.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square X".into(),
            found: format!("{}x{}", x.rows(), x.cols()),
        });
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension { n });
    }
    let FoldedPair { f, g } = fold(x)?;
    Ok((f.upper_triangle(), g.upper_triangle()))
}

/// `X⁻¹` through triangular inverses of the folded blocks; the result is X-type.
pub fn x_inverse<T: Scalar>(x: &Matrix<T>) -> Result<Matrix<T>> {
    let (rf, rg) = x_blocks(x)?;
    Ok(assemble_x(&triangular_inverse(&rf)?, &triangular_inverse(&rg)?))
}

pub fn is_x_type<T: Scalar>(x: &Matrix<T>, tol: T) -> bool {
    x.is_square()
        && x.rows() % 2 == 0
        && is_centrosymmetric(x, tol)
        && off_support_max(x) <= tol * (T::one() + x.max_abs())
}

/// Residuals of a computed factorization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `‖A − QX‖_F / (1 + ‖A‖_F)`
    pub residual: f64,
    /// `‖QᵀQ − I‖_F`
    pub orthogonality: f64,
    /// `‖QᵀR_mQ − R_n‖_F`
    pub perplectic: f64,
    /// `‖R_m·Q·R_n − Q‖_max`
    pub q_centro_defect: f64,
    /// Largest entry of `X` outside the double cone.
    pub off_support: f64,
}

impl VerificationReport {
    pub fn worst(&self) -> f64 {
        self.residual
            .max(self.orthogonality)
            .max(self.perplectic)
            .max(self.q_centro_defect)
            .max(self.off_support)
    }
}

pub fn verify_qx<T: Scalar>(a: &Matrix<T>, f: &QxFactors<T>) -> Result<VerificationReport> {
    let (m, n) = a.shape();
    if f.q.shape() != (m, n) || f.x.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: format!("Q {m}x{n}, X {n}x{n}"),
            found: format!("Q {:?}, X {:?}", f.q.shape(), f.x.shape()),
        });
    }
    let qtq = f.q.t_matmul(&f.q);
    let rq = f.q.flip_rows();
    let qtrq = f.q.t_matmul(&rq);
    let rn = centro::exchange_matrix::<T>(n);
    Ok(VerificationReport {
        residual: ((a - &(&f.q * &f.x)).frobenius_norm() / (T::one() + a.frobenius_norm()))
            .to_f64_lossy(),
        orthogonality: (&qtq - &Matrix::identity(n)).frobenius_norm().to_f64_lossy(),
        perplectic: (&qtrq - &rn).frobenius_norm().to_f64_lossy(),
        q_centro_defect: centro::centro_defect(&f.q).to_f64_lossy(),
        off_support: off_support_max(&f.x).to_f64_lossy(),
    })
}

/// `κ₂ = ‖X‖₂·‖X⁻¹‖₂` and `cond(X) = ‖|X|·|X⁻¹|‖₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conditioning<T> {
    pub kappa2: T,
    pub cond_x: T,
}

pub fn conditioning<T: Scalar>(f: &QxFactors<T>) -> Result<Conditioning<T>> {
    let xi = x_inverse(&f.x)?;
    Ok(Conditioning {
        kappa2: norm2(&f.x)? * norm2(&xi)?,
        cond_x: norm2(&(&f.x.abs() * &xi.abs()))?,
    })
}
