use crate::error::{Error, Result};
use crate::{Matrix, Scalar};

/// Solves `R·Y = B` for upper-triangular `R` by back substitution.
pub fn triangular_solve<T: Scalar>(r: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let l = r.rows();
    if !r.is_square() || b.rows() != l {
        return Err(Error::DimensionMismatch {
            expected: format!("square R and {l} rows in B"),
            found: format!("R {:?}, B {:?}", r.shape(), b.shape()),
        });
    }
    let threshold = T::pivot_tol() * r.max_abs();
    for i in 0..l {
        let d = r[(i, i)].abs();
        if d <= threshold || d == T::zero() {
            return Err(Error::SingularTriangular { index: i });
        }
    }
    let k = b.cols();
    let mut y = b.clone();
    for c in 0..k {
        for i in (0..l).rev() {
            let mut s = y[(i, c)];
            for j in i + 1..l {
                s -= r[(i, j)] * y[(j, c)];
            }
            y[(i, c)] = s / r[(i, i)];
        }
    }
    Ok(y)
}

/// Inverse of an upper-triangular matrix; the result is upper triangular.
pub fn triangular_inverse<T: Scalar>(r: &Matrix<T>) -> Result<Matrix<T>> {
    triangular_solve(r, &Matrix::identity(r.rows())).map(|y| y.upper_triangle())
}
