use crate::error::{Error, Result};
use crate::{Matrix, Scalar};

/// Thin QR factors with `R` carrying a strictly positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinQr<T> {
    pub q: Matrix<T>,
    pub r: Matrix<T>,
}

/// Householder QR of a tall `p×l` matrix, sign-normalized so the factorization is unique.
pub fn householder_qr<T: Scalar>(m: &Matrix<T>) -> Result<ThinQr<T>> {
    let (p, l) = m.shape();
    if p < l {
        return Err(Error::DimensionMismatch {
            expected: format!("at least {l} rows"),
            found: format!("{p} rows"),
        });
    }
    let threshold = T::rank_tol() * m.frobenius_norm();
    let mut a = m.clone();
    let mut reflectors: Vec<Vec<T>> = Vec::with_capacity(l);
    let mut r = Matrix::zeros(l, l);

    for k in 0..l {
        let norm = (k..p).map(|i| a[(i, k)] * a[(i, k)]).sum::<T>().sqrt();
        if norm <= threshold || norm == T::zero() {
            return Err(Error::RankDeficient { column: k });
        }
        let x0 = a[(k, k)];
        let alpha = if x0 >= T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..p).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vv: T = v.iter().map(|&t| t * t).sum();
        let two = T::lit(2.0);
        for j in k..l {
            let dot: T = v.iter().enumerate().map(|(s, &vs)| vs * a[(k + s, j)]).sum();
            let f = two * dot / vv;
            for (s, &vs) in v.iter().enumerate() {
                a[(k + s, j)] -= f * vs;
            }
        }
        for j in k..l {
            r[(k, j)] = a[(k, j)];
        }
        reflectors.push(v);
    }

    let mut q = Matrix::zeros(p, l);
    for j in 0..l {
        q[(j, j)] = T::one();
    }
    let two = T::lit(2.0);
    for (k, v) in reflectors.iter().enumerate().rev() {
        let vv: T = v.iter().map(|&t| t * t).sum();
        for j in 0..l {
            let dot: T = v.iter().enumerate().map(|(s, &vs)| vs * q[(k + s, j)]).sum();
            let f = two * dot / vv;
            for (s, &vs) in v.iter().enumerate() {
                q[(k + s, j)] -= f * vs;
            }
        }
    }

    for k in 0..l {
        if r[(k, k)] < T::zero() {
            for j in k..l {
                r[(k, j)] = -r[(k, j)];
            }
            for i in 0..p {
                q[(i, k)] = -q[(i, k)];
            }
        }
    }
    Ok(ThinQr { q, r })
}
