//! Double-cone operators: the support set `S_X`, the projections `upx`, `lowx`, `utx`,
//! the selection `xvec`, their matrix representations, and diagonal scalings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::vec_perm;
use crate::{Matrix, Scalar};

/// `(i, j)` (zero-based) lies in the double cone of an `n×n` matrix.
#[inline]
pub fn in_support(n: usize, i: usize, j: usize) -> bool {
    (i <= j && i + j < n) || (i >= j && i + j + 1 >= n)
}

/// `(i, j)` lies on the main diagonal or the anti-diagonal.
#[inline]
pub fn on_boundary(n: usize, i: usize, j: usize) -> bool {
    i == j || i + j + 1 == n
}

/// Entry weight applied by `upx`: 1 inside the cone, ½ on both diagonals, 0 outside.
#[inline]
pub fn upx_weight<T: Scalar>(n: usize, i: usize, j: usize) -> T {
    if !in_support(n, i, j) {
        T::zero()
    } else if on_boundary(n, i, j) {
        T::half()
    } else {
        T::one()
    }
}

/// `τ₁ = n(n+2)/2`, the size of the double cone.
pub fn tau(n: usize) -> usize {
    n * (n + 2) / 2
}

/// The support set `S_X` for an even order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportMask {
    pub n: usize,
}

impl SupportMask {
    pub fn new(n: usize) -> Result<Self> {
        check_even(n)?;
        Ok(Self { n })
    }

    pub fn member(&self, i: usize, j: usize) -> bool {
        in_support(self.n, i, j)
    }

    pub fn boundary(&self, i: usize, j: usize) -> bool {
        on_boundary(self.n, i, j)
    }

    pub fn tau(&self) -> usize {
        tau(self.n)
    }

    /// Cone positions in `xvec` order: column by column, top to bottom.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::with_capacity(tau(n));
        for j in 0..n {
            for i in 0..n {
                if in_support(n, i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 || n == 0 {
        Err(Error::OddDimension { n })
    } else {
        Ok(())
    }
}

fn check_square_even<T: Scalar>(c: &Matrix<T>) -> Result<usize> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", c.rows(), c.cols()),
        });
    }
    check_even(c.rows())?;
    Ok(c.rows())
}

/// Keeps the cone, halves both diagonals, zeroes everything else.
pub fn upx<T: Scalar>(c: &Matrix<T>) -> Result<Matrix<T>> {
    let n = check_square_even(c)?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        let w = upx_weight::<T>(n, i, j);
        if w == T::one() {
            c[(i, j)]
        } else {
            w * c[(i, j)]
        }
    }))
}

/// `lowx(C) = C − upx(C)`.
pub fn lowx<T: Scalar>(c: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(c - &upx(c)?)
}

/// Keeps the cone in full.
pub fn utx<T: Scalar>(c: &Matrix<T>) -> Result<Matrix<T>> {
    let n = check_square_even(c)?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if in_support(n, i, j) {
            c[(i, j)]
        } else {
            T::zero()
        }
    }))
}

/// Cone entries in column-major order.
pub fn xvec<T: Scalar>(c: &Matrix<T>) -> Result<Vec<T>> {
    let n = check_square_even(c)?;
    Ok(SupportMask { n }
        .positions()
        .into_iter()
        .map(|(i, j)| c[(i, j)])
        .collect())
}

/// Places an `xvec` back into an `n×n` matrix with zeros off the cone.
pub fn xvec_to_matrix<T: Scalar>(n: usize, v: &[T]) -> Result<Matrix<T>> {
    check_even(n)?;
    if v.len() != tau(n) {
        return Err(Error::DimensionMismatch {
            expected: format!("{} entries", tau(n)),
            found: format!("{} entries", v.len()),
        });
    }
    let mut c = Matrix::zeros(n, n);
    for (&(i, j), &x) in (SupportMask { n }).positions().iter().zip(v) {
        c[(i, j)] = x;
    }
    Ok(c)
}

/// Largest entry in absolute value outside the cone.
pub fn off_support_max<T: Scalar>(c: &Matrix<T>) -> T {
    let n = c.rows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..c.cols() {
            if !in_support(n, i, j) && c[(i, j)].abs() > worst {
                worst = c[(i, j)].abs();
            }
        }
    }
    worst
}

/// Dense matrices of `xvec`, `upx`, `utx` and the vec-permutation for an `m×n` ambient shape.
#[derive(Clone, Debug)]
pub struct StructuredOperatorSet<T> {
    pub m: usize,
    pub n: usize,
    /// `τ₁ × n²`
    pub m_xvec: Matrix<T>,
    /// `n² × n²`, diagonal
    pub m_upx: Matrix<T>,
    /// `n² × n²`, diagonal
    pub m_utx: Matrix<T>,
    /// `mn × mn`
    pub pi_mn: Matrix<T>,
}

pub fn build_operator_matrices<T: Scalar>(m: usize, n: usize) -> Result<StructuredOperatorSet<T>> {
    check_even(n)?;
    let nn = n * n;
    let mut m_xvec = Matrix::zeros(tau(n), nn);
    for (row, (i, j)) in (SupportMask { n }).positions().into_iter().enumerate() {
        m_xvec[(row, j * n + i)] = T::one();
    }
    let mut m_upx = Matrix::zeros(nn, nn);
    let mut m_utx = Matrix::zeros(nn, nn);
    for j in 0..n {
        for i in 0..n {
            let k = j * n + i;
            m_upx[(k, k)] = upx_weight(n, i, j);
            if in_support(n, i, j) {
                m_utx[(k, k)] = T::one();
            }
        }
    }
    Ok(StructuredOperatorSet {
        m,
        n,
        m_xvec,
        m_upx,
        m_utx,
        pi_mn: vec_perm(m, n),
    })
}

/// How a diagonal scaling was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingKind {
    Identity,
    RowNorms,
    Custom,
}

/// Positive palindromic diagonal scaling `D_n`; only the first `l` values are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingD<T> {
    pub kind: ScalingKind,
    half: Vec<T>,
}

impl<T: Scalar> ScalingD<T> {
    /// Scaling from its first `l` diagonal values.
    pub fn from_half(half: Vec<T>) -> Result<Self> {
        if half.is_empty() {
            return Err(Error::InvalidArgument("empty scaling".into()));
        }
        if let Some(k) = half.iter().position(|&d| !(d > T::zero() && d.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "scaling entry {k} is not a positive finite number"
            )));
        }
        Ok(Self {
            kind: ScalingKind::Custom,
            half,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kind: ScalingKind::Identity,
            half: vec![T::one(); n / 2],
        }
    }

    pub fn n(&self) -> usize {
        2 * self.half.len()
    }

    /// Full palindromic diagonal `δ₁..δ_l, δ_l..δ₁`.
    pub fn diagonal(&self) -> Vec<T> {
        let mut d = self.half.clone();
        d.extend(self.half.iter().rev());
        d
    }

    pub fn matrix(&self) -> Matrix<T> {
        Matrix::diag(&self.diagonal())
    }

    pub fn inverse_matrix(&self) -> Matrix<T> {
        let d: Vec<T> = self.diagonal().iter().map(|&x| T::one() / x).collect();
        Matrix::diag(&d)
    }

    /// `ς = max_{α<β} δ_β/δ_α` over the full diagonal.
    pub fn varsigma(&self) -> T {
        let d = self.diagonal();
        let mut best = T::zero();
        let mut min_so_far = d[0];
        for &x in &d[1..] {
            best = best.max(x / min_so_far);
            min_so_far = min_so_far.min(x);
        }
        best
    }
}

/// Candidates for the infimum over scalings: `I` and the row-norm scaling of `X`.
pub fn scaling_candidates<T: Scalar>(x: &Matrix<T>) -> Result<Vec<ScalingD<T>>> {
    let n = check_square_even(x)?;
    let mut half = Vec::with_capacity(n / 2);
    for i in 0..n / 2 {
        let r = x.row(i).iter().map(|&v| v * v).sum::<T>().sqrt();
        if r.to_f64_lossy() <= 1e-300 {
            return Err(Error::ZeroRow { row: i });
        }
        half.push(r);
    }
    Ok(vec![
        ScalingD::identity(n),
        ScalingD {
            kind: ScalingKind::RowNorms,
            half,
        },
    ])
}

/// Both sides of the scaling identities and inequalities for `upx`/`lowx`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingLemmaReport<T> {
    /// `‖upx(AD) − upx(A)D‖_F`
    pub upx_right: T,
    /// `‖D·upx(A) − upx(DA)‖_F`
    pub upx_left: T,
    /// `‖lowx(AD) − lowx(A)D‖_F`
    pub lowx_right: T,
    /// `‖D·lowx(A) − lowx(DA)‖_F`
    pub lowx_left: T,
    /// `‖upx(A) + D⁻¹·upx(Aᵀ)·D‖_F`
    pub upper_lhs: T,
    /// `√(1+ς²)·‖A‖_F`
    pub upper_rhs: T,
    /// `‖D·lowx(A)·D⁻¹ − D⁻¹·lowx(A)ᵀ·D‖_F`
    pub lower_lhs: T,
    /// `√2·ς·‖A‖_F`
    pub lower_rhs: T,
    /// `‖D·lowx(A) − D⁻¹·lowx(Aᵀ)·D‖_F`, not scale invariant; reported only.
    pub lower_unscaled_lhs: T,
}

impl<T: Scalar> ScalingLemmaReport<T> {
    pub fn upper_slack(&self) -> T {
        self.upper_rhs - self.upper_lhs
    }

    pub fn lower_slack(&self) -> T {
        self.lower_rhs - self.lower_lhs
    }

    pub fn max_identity_residual(&self) -> T {
        self.upx_right
            .max(self.upx_left)
            .max(self.lowx_right)
            .max(self.lowx_left)
    }
}

pub fn scaling_lemma_check<T: Scalar>(a: &Matrix<T>, d: &ScalingD<T>) -> Result<ScalingLemmaReport<T>> {
    let n = check_square_even(a)?;
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("scaling of order {n}"),
            found: format!("order {}", d.n()),
        });
    }
    let dm = d.matrix();
    let di = d.inverse_matrix();
    let at = a.transpose();
    let up = upx(a)?;
    let low = lowx(a)?;
    let fro = a.frobenius_norm();
    let s = d.varsigma();

    let upper = &up + &(&(&di * &upx(&at)?) * &dm);
    let lower = &(&(&dm * &low) * &di) - &(&(&di * &low.transpose()) * &dm);
    let lower_unscaled = &(&dm * &low) - &(&(&di * &lowx(&at)?) * &dm);

    Ok(ScalingLemmaReport {
        upx_right: (&upx(&(a * &dm))? - &(&up * &dm)).frobenius_norm(),
        upx_left: (&(&dm * &up) - &upx(&(&dm * a))?).frobenius_norm(),
        lowx_right: (&lowx(&(a * &dm))? - &(&low * &dm)).frobenius_norm(),
        lowx_left: (&(&dm * &low) - &lowx(&(&dm * a))?).frobenius_norm(),
        upper_lhs: upper.frobenius_norm(),
        upper_rhs: (T::one() + s * s).sqrt() * fro,
        lower_lhs: lower.frobenius_norm(),
        lower_rhs: T::lit(2.0).sqrt() * s * fro,
        lower_unscaled_lhs: lower_unscaled.frobenius_norm(),
    })
}
