use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::entrywise::two_norm;
use crate::{rng, Matrix, Scalar};

/// A linear operator known only through products with it and its transpose.
pub trait LinearMap<T> {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y = M·x`
    fn apply(&self, x: &[T]) -> Vec<T>;
    /// `y = Mᵀ·x`
    fn apply_transpose(&self, x: &[T]) -> Vec<T>;
}

impl<T: Scalar> LinearMap<T> for Matrix<T> {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn apply(&self, x: &[T]) -> Vec<T> {
        self.matvec(x)
    }
    fn apply_transpose(&self, x: &[T]) -> Vec<T> {
        self.t_matvec(x)
    }
}

/// Operator defined by a pair of closures.
pub struct FnMap<F, G> {
    pub rows: usize,
    pub cols: usize,
    pub apply: F,
    pub apply_transpose: G,
}

impl<T, F, G> LinearMap<T> for FnMap<F, G>
where
    F: Fn(&[T]) -> Vec<T>,
    G: Fn(&[T]) -> Vec<T>,
{
    fn nrows(&self) -> usize {
        self.rows
    }
    fn ncols(&self) -> usize {
        self.cols
    }
    fn apply(&self, x: &[T]) -> Vec<T> {
        (self.apply)(x)
    }
    fn apply_transpose(&self, x: &[T]) -> Vec<T> {
        (self.apply_transpose)(x)
    }
}

/// Largest Krylov dimension used by [`spectral_norm`] for an operator whose smaller side is `dim`.
pub fn iteration_cap(dim: usize) -> usize {
    dim.min(10 * dim.max(100)).min(1000)
}

/// Fixed start vector for the Krylov iteration.
///
/// Entries are drawn from `[0.5, 1.5)` by a fixed-seed stream. A constant vector is avoided
/// because the structured operators of this crate commute with the exchange and
/// vec-permutation symmetries, so a constant start can lie in a lower invariant subspace.
fn start_vector<T: Scalar>(dim: usize) -> Vec<T> {
    let mut r = rng::stream(0x0005_eed0_f00d, 7);
    let v: Vec<T> = (0..dim).map(|_| T::lit(r.gen_range(0.5..1.5))).collect();
    let nv = two_norm(&v);
    v.into_iter().map(|x| x / nv).collect()
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Largest eigenvalue of the Lanczos tridiagonal and the last entry of its eigenvector.
fn top_ritz_pair(alpha: &[f64], beta: &[f64]) -> (f64, f64) {
    let k = alpha.len();
    let t = nalgebra::DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let eig = nalgebra::SymmetricEigen::new(t);
    let top = eig.eigenvalues.imax();
    (eig.eigenvalues[top], eig.eigenvectors[(k - 1, top)])
}

/// `‖M‖₂` from the largest eigenvalue of `MᵀM` or `MMᵀ`, whichever is smaller.
///
/// Runs Lanczos with full reorthogonalization from a fixed start vector and stops once
/// the Ritz residual `‖B·y − θ·y‖` drops to `tol·θ`. Plain power iteration stalls on the
/// clustered leading singular values of the structured operators; the Krylov space
/// resolves the cluster in a few dozen steps.
pub fn spectral_norm<T: Scalar, M: LinearMap<T> + ?Sized>(m: &M, tol: T) -> Result<T> {
    let (r, c) = (m.nrows(), m.ncols());
    if r == 0 || c == 0 {
        return Ok(T::zero());
    }
    let right = c <= r;
    let dim = r.min(c);
    let gram = |v: &[T]| {
        if right {
            m.apply_transpose(&m.apply(v))
        } else {
            m.apply(&m.apply_transpose(v))
        }
    };
    let cap = iteration_cap(dim);
    let tol = tol.to_f64_lossy();
    let mut basis: Vec<Vec<T>> = vec![start_vector::<T>(dim)];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    loop {
        let k = basis.len();
        let mut w = gram(&basis[k - 1]);
        alpha.push(dot(&w, &basis[k - 1]).to_f64_lossy());
        for _ in 0..2 {
            for q in &basis {
                let h = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, &y)| *x -= h * y);
            }
        }
        let b = two_norm(&w);
        let (theta, last) = top_ritz_pair(&alpha, &beta);
        let theta = theta.max(0.0);
        let residual = b.to_f64_lossy() * last.abs();
        if theta == 0.0 && b == T::zero() {
            return Ok(T::zero());
        }
        if residual <= tol * theta || k == dim || b.to_f64_lossy() <= f64::EPSILON * theta {
            return Ok(T::lit(theta).sqrt());
        }
        if k >= cap {
            return Err(Error::NoConvergence { iterations: cap });
        }
        beta.push(b.to_f64_lossy());
        basis.push(w.into_iter().map(|x| x / b).collect());
    }
}
/// Convenience wrapper using the scalar's default tolerance.
pub fn norm2<T: Scalar, M: LinearMap<T> + ?Sized>(m: &M) -> Result<T> {
    spectral_norm(m, T::spectral_tol())
}
