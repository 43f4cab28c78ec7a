//! Centrosymmetric structure: exchange matrices, the orthogonal fold that splits a
//! centrosymmetric matrix into two half-size blocks, and the instance generators.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{rng, Matrix, Scalar};

/// Tolerance used when validating user-supplied centrosymmetric matrices.
pub const CENTRO_TOL: f64 = 1e-13;

/// The exchange (reverse identity) matrix `R_k`.
pub fn exchange_matrix<T: Scalar>(k: usize) -> Matrix<T> {
    Matrix::from_fn(k, k, |i, j| if i + j + 1 == k { T::one() } else { T::zero() })
}

/// `‖R_m·A·R_n − A‖_max`.
pub fn centro_defect<T: Scalar>(a: &Matrix<T>) -> T {
    let (m, n) = a.shape();
    let mut worst = T::zero();
    for i in 0..m {
        for j in 0..n {
            let d = (a[(m - 1 - i, n - 1 - j)] - a[(i, j)]).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn is_centrosymmetric<T: Scalar>(a: &Matrix<T>, tol: T) -> bool {
    centro_defect(a) <= tol * (T::one() + a.max_abs())
}

/// A tall centrosymmetric matrix with an even number of columns.
#[derive(Clone, PartialEq, Debug)]
pub struct CentroMatrix<T>(Matrix<T>);

impl<T: Scalar> CentroMatrix<T> {
    pub fn new(a: Matrix<T>) -> Result<Self> {
        let (m, n) = a.shape();
        if n % 2 == 1 {
            return Err(Error::OddColumnDimension { n });
        }
        if n == 0 || m < n {
            return Err(Error::DimensionMismatch {
                expected: "m >= n >= 2".into(),
                found: format!("{m}x{n}"),
            });
        }
        if !is_centrosymmetric(&a, T::lit(CENTRO_TOL)) {
            return Err(Error::NotCentrosymmetric {
                defect: centro_defect(&a).to_f64_lossy(),
            });
        }
        Ok(Self(a))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_inner(self) -> Matrix<T> {
        self.0
    }

    /// Sum of two centrosymmetric matrices of equal shape.
    pub fn plus(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }
}

impl<T> Deref for CentroMatrix<T> {
    type Target = Matrix<T>;
    fn deref(&self) -> &Matrix<T> {
        &self.0
    }
}

/// Orthogonal `B` with `Bᵀ·R_k·B = diag(I_⌈k/2⌉, −I_⌊k/2⌋)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldBasis<T> {
    pub k: usize,
    pub b: Matrix<T>,
}

pub fn fold_basis<T: Scalar>(k: usize) -> FoldBasis<T> {
    let p = k / 2;
    let s = T::one() / T::lit(2.0).sqrt();
    let mut b = Matrix::zeros(k, k);
    let odd = k % 2;
    for i in 0..p {
        b[(i, i)] = s;
        b[(i, p + odd + i)] = s;
        b[(k - 1 - i, i)] = s;
        b[(k - 1 - i, p + odd + i)] = -s;
    }
    if odd == 1 {
        b[(p, p)] = T::one();
    }
    FoldBasis { k, b }
}

/// `diag(I_⌈k/2⌉, −I_⌊k/2⌋)`.
pub fn signature<T: Scalar>(k: usize) -> Matrix<T> {
    let pos = k - k / 2;
    Matrix::from_fn(k, k, |i, j| match (i == j, i < pos) {
        (true, true) => T::one(),
        (true, false) => -T::one(),
        _ => T::zero(),
    })
}

/// The two half-size blocks of `Q_mᵀ·A·Q_n = diag(F, G)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldedPair<T> {
    /// `⌈m/2⌉ × l`
    pub f: Matrix<T>,
    /// `⌊m/2⌋ × l`
    pub g: Matrix<T>,
}

/// Folds a centrosymmetric `m×2l` matrix into its two blocks.
pub fn fold<T: Scalar>(a: &Matrix<T>) -> Result<FoldedPair<T>> {
    let (m, n) = a.shape();
    if n % 2 == 1 {
        return Err(Error::OddColumnDimension { n });
    }
    if !is_centrosymmetric(a, T::lit(1e-12)) {
        return Err(Error::NotCentrosymmetric {
            defect: centro_defect(a).to_f64_lossy(),
        });
    }
    let l = n / 2;
    let p = m / 2;
    let odd = m % 2 == 1;
    let mut f = Matrix::zeros(p + usize::from(odd), l);
    let mut g = Matrix::zeros(p, l);
    for i in 0..p {
        for j in 0..l {
            // (A12·R_l)[i][j] = A12[i][l-1-j] = A[i][n-1-j]
            let a11 = a[(i, j)];
            let a12r = a[(i, n - 1 - j)];
            f[(i, j)] = a11 + a12r;
            g[(i, j)] = a11 - a12r;
        }
    }
    if odd {
        let root2 = T::lit(2.0).sqrt();
        for j in 0..l {
            f[(p, j)] = root2 * a[(p, j)];
        }
    }
    Ok(FoldedPair { f, g })
}

/// `Q_m·diag(F, G)·Q_nᵀ`, the inverse of [`fold`].
pub fn unfold<T: Scalar>(pair: &FoldedPair<T>) -> Matrix<T> {
    let m = pair.f.rows() + pair.g.rows();
    let n = pair.f.cols() + pair.g.cols();
    let qm = fold_basis::<T>(m).b;
    let qn = fold_basis::<T>(n).b;
    &(&qm * &Matrix::block_diag(&pair.f, &pair.g)) * &qn.transpose()
}

/// Mirrors the free half of an `m×n` array into a centrosymmetric matrix.
fn mirrored<T: Scalar>(m: usize, n: usize, mut draw: impl FnMut() -> T) -> Matrix<T> {
    let mut a = Matrix::zeros(m, n);
    for i in 0..m / 2 {
        for j in 0..n {
            let v = draw();
            a[(i, j)] = v;
            a[(m - 1 - i, n - 1 - j)] = v;
        }
    }
    if m % 2 == 1 {
        let p = m / 2;
        for j in 0..n.div_ceil(2) {
            let v = draw();
            a[(p, j)] = v;
            a[(p, n - 1 - j)] = v;
        }
    }
    a
}

/// Random centrosymmetric matrix with U(−1, 1) entries, deterministic in `(m, n, seed)`.
pub fn random_centro<T: Scalar>(m: usize, n: usize, seed: u64) -> Result<CentroMatrix<T>> {
    let mut r = rng::stream(seed, rng::MATRIX_STREAM);
    CentroMatrix::new(mirrored(m, n, || rng::uniform(&mut r)))
}

/// Symmetric Toeplitz matrix `t_ij = b_{|i−j|}` (always centrosymmetric).
pub fn toeplitz_centro<T: Scalar>(b: &[T]) -> Result<CentroMatrix<T>> {
    let n = b.len();
    CentroMatrix::new(Matrix::from_fn(n, n, |i, j| b[i.abs_diff(j)]))
}

/// `m×n` centrosymmetric matrix derived from the symmetric Toeplitz matrix of `b`.
///
/// Takes the leading `m×n` block `T` of `toeplitz(b)` and returns `½(T + R_m·T·R_n)`,
/// which equals `T` itself whenever `m = n = b.len()`.
pub fn toeplitz_rect<T: Scalar>(b: &[T], m: usize, n: usize) -> Result<CentroMatrix<T>> {
    if b.len() < m.max(n) {
        return Err(Error::InvalidArgument(format!(
            "Toeplitz vector of length {} cannot fill a {m}x{n} matrix",
            b.len()
        )));
    }
    let t = |i: usize, j: usize| b[i.abs_diff(j)];
    let half = T::half();
    CentroMatrix::new(Matrix::from_fn(m, n, |i, j| {
        let a = t(i, j);
        let c = t(m - 1 - i, n - 1 - j);
        if a == c {
            a
        } else {
            half * (a + c)
        }
    }))
}

/// Which matrix `K` the componentwise model `|ΔA| ≤ ε·K·|A|` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KMode {
    Identity,
    Ones,
}

/// A structured perturbation together with its componentwise model.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation<T> {
    pub delta_a: CentroMatrix<T>,
    /// `m×m` weight matrix of the componentwise model.
    pub k: Matrix<T>,
    /// Smallest `ε` with `|ΔA| ≤ ε·K·|A|`.
    pub eps_eff: T,
}

/// `ΔA = eps·(E∘A)` with a centrosymmetric U(−1, 1) mask `E`, and `K = I`.
pub fn random_centro_perturbation<T: Scalar>(
    a: &CentroMatrix<T>,
    eps: T,
    seed: u64,
) -> Perturbation<T> {
    random_centro_perturbation_with(a, eps, seed, KMode::Identity)
}

pub fn random_centro_perturbation_with<T: Scalar>(
    a: &CentroMatrix<T>,
    eps: T,
    seed: u64,
    k_mode: KMode,
) -> Perturbation<T> {
    let (m, n) = a.shape();
    let mut r = rng::stream(seed, rng::PERTURBATION_STREAM);
    let mask = mirrored::<T>(m, n, || rng::uniform(&mut r));
    let delta = mask.hadamard(a).scale(eps);
    let (k, eps_eff) = match k_mode {
        KMode::Identity => (Matrix::identity(m), eps),
        KMode::Ones => {
            let k = Matrix::from_fn(m, m, |_, _| T::one());
            let ka = &k * &a.abs();
            let mut e = T::zero();
            for i in 0..m {
                for j in 0..n {
                    if ka[(i, j)] > T::zero() {
                        e = e.max(delta[(i, j)].abs() / ka[(i, j)]);
                    }
                }
            }
            (k, e)
        }
    };
    Perturbation {
        delta_a: CentroMatrix(delta),
        k,
        eps_eff,
    }
}
