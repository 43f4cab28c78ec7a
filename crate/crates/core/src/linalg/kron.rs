use crate::{Matrix, Scalar};

/// Kronecker product `E ⊗ F`: block `(i, j)` equals `e_ij·F`.
pub fn kron<T: Scalar>(e: &Matrix<T>, f: &Matrix<T>) -> Matrix<T> {
    let (p, q) = f.shape();
    Matrix::from_fn(e.rows() * p, e.cols() * q, |i, j| {
        e[(i / p, j / q)] * f[(i % p, j % q)]
    })
}

/// The vec-permutation matrix `Π_{m,n}` with `Π·vec(E) = vec(Eᵀ)` for every `m×n` matrix `E`.
pub fn vec_perm<T: Scalar>(m: usize, n: usize) -> Matrix<T> {
    let mut pi = Matrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            // E[i][j] sits at j*m+i in vec(E) and at i*n+j in vec(Eᵀ).
            pi[(i * n + j, j * m + i)] = T::one();
        }
    }
    pi
}

/// Column-stacked vector of a matrix.
pub fn vec<T: Scalar>(c: &Matrix<T>) -> Vec<T> {
    c.vec()
}
