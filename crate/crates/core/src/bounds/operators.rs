use crate::error::{Error, Result};
use crate::xops::{tau, upx_weight, SupportMask};
use crate::{Matrix, Scalar};

/// Largest `m·n` for which the dense operators are materialized.
pub const DEFAULT_SIZE_CAP: usize = 2500;

/// Dense first-order perturbation operators.
///
/// * `gx` (`τ₁ × mn`): `xvec(ΔX) ≈ G_X·vec(ΔA)`, acting as
///   `vec(E) ↦ xvec(upx(W + Wᵀ)·X)` with `W = QᵀEX⁻¹`.
/// * `hx` (`τ₁ × n²`): `vec(E) ↦ xvec(upx(X⁻ᵀEX⁻¹)·X)`.
/// * `gq` (`mn × mn`): `vec(ΔQ) ≈ G_Q·vec(ΔA)`, acting as
///   `vec(E) ↦ vec(EX⁻¹ − Q·upx(W + Wᵀ))`.
#[derive(Clone, Debug)]
pub struct FirstOrderOperators<T> {
    pub m: usize,
    pub n: usize,
    pub gx: Matrix<T>,
    pub hx: Matrix<T>,
    pub gq: Matrix<T>,
}

/// `P_v(α, β) = Σ_γ w(α, γ)·v_γ·X_γβ` on the cone positions, where `w` are the `upx` weights.
fn cone_products<T: Scalar>(v: &[T], x: &Matrix<T>, positions: &[(usize, usize)]) -> Vec<T> {
    let n = x.rows();
    positions
        .iter()
        .map(|&(a, b)| {
            (0..n)
                .map(|g| upx_weight::<T>(n, a, g) * v[g] * x[(g, b)])
                .sum()
        })
        .collect()
}

/// `U_v(r, β) = Σ_α Q_rα·w(α, β)·v_α`, stored row-major `m×n`.
fn q_products<T: Scalar>(v: &[T], q: &Matrix<T>) -> Matrix<T> {
    let (m, n) = q.shape();
    let wv = Matrix::from_fn(n, n, |a, b| upx_weight::<T>(n, a, b) * v[a]);
    let mut u = Matrix::zeros(m, n);
    for r in 0..m {
        for a in 0..n {
            let qa = q[(r, a)];
            if qa == T::zero() {
                continue;
            }
            for b in 0..n {
                u[(r, b)] += qa * wv[(a, b)];
            }
        }
    }
    u
}

pub fn build_first_order_operators<T: Scalar>(
    q: &Matrix<T>,
    x: &Matrix<T>,
    x_inv: &Matrix<T>,
    size_cap: usize,
) -> Result<FirstOrderOperators<T>> {
    let (m, n) = q.shape();
    if m * n > size_cap {
        return Err(Error::SizeCapExceeded {
            size: m * n,
            cap: size_cap,
        });
    }
    let mask = SupportMask::new(n)?;
    let positions = mask.positions();
    let t1 = tau(n);

    let pq: Vec<Vec<T>> = (0..m).map(|i| cone_products(q.row(i), x, &positions)).collect();
    let px: Vec<Vec<T>> = (0..n).map(|j| cone_products(x_inv.row(j), x, &positions)).collect();

    let mut gx = Matrix::zeros(t1, m * n);
    for j in 0..n {
        let b = x_inv.row(j);
        for i in 0..m {
            let a = q.row(i);
            let col = j * m + i;
            for (k, &(al, _)) in positions.iter().enumerate() {
                gx[(k, col)] = a[al] * px[j][k] + b[al] * pq[i][k];
            }
        }
    }

    let mut hx = Matrix::zeros(t1, n * n);
    for qi in 0..n {
        for p in 0..n {
            let c = x_inv.row(p);
            let col = qi * n + p;
            for (k, &(al, _)) in positions.iter().enumerate() {
                hx[(k, col)] = c[al] * px[qi][k];
            }
        }
    }

    let uq: Vec<Matrix<T>> = (0..m).map(|i| q_products(q.row(i), q)).collect();
    let ux: Vec<Matrix<T>> = (0..n).map(|j| q_products(x_inv.row(j), q)).collect();
    let mut gq = Matrix::zeros(m * n, m * n);
    for j in 0..n {
        let b = x_inv.row(j);
        for i in 0..m {
            let a = q.row(i);
            let col = j * m + i;
            for be in 0..n {
                for r in 0..m {
                    let mut v = -(b[be] * uq[i][(r, be)] + a[be] * ux[j][(r, be)]);
                    if r == i {
                        v += b[be];
                    }
                    gq[(be * m + r, col)] = v;
                }
            }
        }
    }

    Ok(FirstOrderOperators { m, n, gx, hx, gq })
}
