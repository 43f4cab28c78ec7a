use centroqx::centro::random_centro;
use centroqx::qx::is_x_type;
use centroqx::xops::{
    build_operator_matrices, in_support, lowx, on_boundary, scaling_candidates, scaling_lemma_check, tau, upx, utx,
    xvec, xvec_to_matrix, ScalingD, SupportMask,
};
use centroqx::{qx_decompose, Error, Matrix, Matrix64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S2: f64 = std::f64::consts::SQRT_2;

fn rand_square(r: &mut ChaCha8Rng, n: usize) -> Matrix64 {
    Matrix::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0))
}

/// Membership written directly from the 1-based double-cone definition.
fn cone_1based(n: usize, a: usize, b: usize) -> bool {
    (a <= b && a + b <= n + 1) || (a >= b && a + b >= n + 1)
}

fn random_x_type(r: &mut ChaCha8Rng, n: usize) -> Matrix64 {
    let f = qx_decompose(&random_centro::<f64>(n, n, r.gen()).unwrap()).unwrap();
    f.x
}

#[test]
fn support_mask_matches_definition() {
    for n in (2..=12).step_by(2) {
        let mask = SupportMask::new(n).unwrap();
        let mut count = 0;
        let mut both = 0;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(in_support(n, i, j), cone_1based(n, i + 1, j + 1));
                assert_eq!(mask.member(i, j), in_support(n, i, j));
                assert_eq!(on_boundary(n, i, j), i == j || i + j + 1 == n);
                count += in_support(n, i, j) as usize;
                both += (in_support(n, i, j) && in_support(n, j, i)) as usize;
            }
        }
        assert_eq!(count, n * (n + 2) / 2);
        assert_eq!(tau(n), count);
        assert_eq!(mask.positions().len(), count);
        assert_eq!(both, 2 * n);
    }
    assert!(matches!(SupportMask::new(3), Err(Error::OddDimension { n: 3 })));
}

#[test]
fn upx_small_cases() {
    assert_eq!(upx(&Matrix64::identity(2)).unwrap(), Matrix::identity(2).scale(0.5));
    let ones = Matrix64::from_fn(4, 4, |_, _| 1.0);
    let expected = Matrix64::from_rows(&[
        [0.5, 1.0, 1.0, 0.5],
        [0.0, 0.5, 0.5, 0.0],
        [0.0, 0.5, 0.5, 0.0],
        [0.5, 1.0, 1.0, 0.5],
    ]);
    assert_eq!(upx(&ones).unwrap(), expected);
    assert!(matches!(upx(&Matrix64::identity(3)), Err(Error::OddDimension { .. })));
}

#[test]
fn utx_keeps_x_type_matrices() {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for n in [2, 4, 6, 8] {
        let x = random_x_type(&mut r, n);
        assert_eq!(utx(&x).unwrap(), x);
    }
}

#[test]
fn xvec_small_cases() {
    let c = Matrix64::from_rows(&[[1.0, 3.0], [2.0, 4.0]]);
    assert_eq!(xvec(&c).unwrap(), c.vec());
    let v = xvec(&Matrix64::identity(4)).unwrap();
    assert_eq!(v.len(), 12);
    assert_eq!(v.iter().filter(|&&x| x == 1.0).count(), 4);
    assert_eq!(v.iter().filter(|&&x| x == 0.0).count(), 8);
}

#[test]
fn xvec_preserves_norm_and_round_trips() {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    for n in [2, 4, 6, 10] {
        let x = random_x_type(&mut r, n);
        let v = xvec(&x).unwrap();
        let nv = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        assert!((nv - x.frobenius_norm()).abs() <= 1e-14 * nv);
        assert_eq!(xvec_to_matrix(n, &v).unwrap(), x);
    }
}

#[test]
fn operator_matrices_for_n_two() {
    let s = build_operator_matrices::<f64>(2, 2).unwrap();
    assert_eq!(s.m_upx, Matrix::identity(4).scale(0.5));
    assert_eq!(s.m_utx, Matrix::identity(4));
    assert_eq!(s.m_xvec, Matrix::identity(4));
}

#[test]
fn operator_matrix_identities_are_exact() {
    for n in [2, 4, 6, 8, 10] {
        let s = build_operator_matrices::<f64>(n + 2, n).unwrap();
        let t = tau(n);
        assert_eq!(&s.m_xvec * &s.m_xvec.transpose(), Matrix::identity(t));
        assert_eq!(s.m_xvec.t_matmul(&s.m_xvec), s.m_utx);
        let trace: f64 = (0..n * n).map(|k| s.m_utx[(k, k)]).sum();
        assert_eq!(trace as usize, t);
        assert!((0..n * n).all(|k| [0.0, 0.5, 1.0].contains(&s.m_upx[(k, k)])));
        assert_eq!(s.pi_mn.shape(), ((n + 2) * n, (n + 2) * n));
    }
}

#[test]
fn operator_matrices_agree_with_behavioral_definitions() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 4, 6, 8] {
        let s = build_operator_matrices::<f64>(n, n).unwrap();
        for _ in 0..5 {
            let c = rand_square(&mut r, n);
            assert_eq!(s.m_upx.matvec(&c.vec()), upx(&c).unwrap().vec());
            assert_eq!(s.m_utx.matvec(&c.vec()), utx(&c).unwrap().vec());
            assert_eq!(s.m_xvec.matvec(&c.vec()), xvec(&c).unwrap());
        }
    }
}

#[test]
fn decomposition_and_transpose_identities_are_exact() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = 2 * r.gen_range(1..=6);
        let c = rand_square(&mut r, n);
        let up = upx(&c).unwrap();
        let low = lowx(&c).unwrap();
        assert_eq!(&up + &low, c);
        assert_eq!(low, upx(&c.transpose()).unwrap().transpose());
    }
}

#[test]
fn upx_recovers_x_type_from_symmetrized_sum() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 4, 6, 8, 10] {
        let w = random_x_type(&mut r, n);
        let rec = upx(&(&w + &w.transpose())).unwrap();
        assert!((&rec - &w).max_abs() <= 1e-13 * (1.0 + w.max_abs()));
    }
}

#[test]
fn upx_norm_inequalities() {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = 2 * r.gen_range(1..=6);
        let c = rand_square(&mut r, n);
        let fro = c.frobenius_norm();
        assert!(fro - upx(&c).unwrap().frobenius_norm() >= -1e-13);
        let sym = &c + &c.transpose();
        assert!(sym.frobenius_norm() / S2 - upx(&sym).unwrap().frobenius_norm() >= -1e-13);
        assert!(S2 * fro - upx(&sym).unwrap().frobenius_norm() >= -1e-13);
    }
}

#[test]
fn scaling_candidates_cases() {
    let c = scaling_candidates(&Matrix64::identity(4)).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c[0].matrix(), Matrix::identity(4));
    assert_eq!(c[1].matrix(), Matrix::identity(4));
    let c = scaling_candidates(&Matrix64::from_rows(&[[2.0, 1.0], [1.0, 2.0]])).unwrap();
    assert!((&c[1].matrix() - &Matrix::identity(2).scale(5f64.sqrt())).max_abs() < 1e-15);
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for n in [4, 6, 10] {
        let x = random_x_type(&mut r, n);
        let d = scaling_candidates(&x).unwrap()[1].diagonal();
        for i in 0..n {
            assert_eq!(d[i], d[n - 1 - i]);
            let row = x.row(i).iter().map(|t| t * t).sum::<f64>().sqrt();
            assert!((d[i] - row).abs() <= 1e-15 * row);
        }
    }
    assert!(matches!(scaling_candidates(&Matrix64::zeros(2, 2)), Err(Error::ZeroRow { .. })));
}

#[test]
fn varsigma_cases() {
    assert_eq!(ScalingD::<f64>::identity(6).varsigma(), 1.0);
    let d = ScalingD::from_half(vec![2.0, 1.0]).unwrap();
    assert_eq!(d.diagonal(), vec![2.0, 1.0, 1.0, 2.0]);
    assert_eq!(d.varsigma(), 2.0);
    let scaled = ScalingD::from_half(vec![14.0, 7.0]).unwrap();
    assert_eq!(scaled.varsigma(), d.varsigma());
    assert!(ScalingD::from_half(vec![1.0, 0.0]).is_err());
}

/// `max_{α<β} δ_β/δ_α` by enumerating all pairs.
fn varsigma_oracle(d: &[f64]) -> f64 {
    let mut best = f64::MIN;
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            best = best.max(d[b] / d[a]);
        }
    }
    best
}

#[test]
fn varsigma_matches_pair_enumeration() {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let l = r.gen_range(1..=6);
        let half: Vec<f64> = (0..l).map(|_| r.gen_range(0.1..10.0)).collect();
        let d = ScalingD::from_half(half).unwrap();
        assert!((d.varsigma() - varsigma_oracle(&d.diagonal())).abs() <= 1e-15 * d.varsigma());
        assert!(d.varsigma() >= 1.0);
    }
}

#[test]
fn scaling_lemma_with_identity_reduces_to_plain_bound() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let a = random_centro::<f64>(6, 6, r.gen()).unwrap();
        let rep = scaling_lemma_check(&a, &ScalingD::identity(6)).unwrap();
        let plain = upx(&(&*a + &a.transpose())).unwrap().frobenius_norm();
        assert!((rep.upper_lhs - plain).abs() <= 1e-14 * plain);
        assert!((rep.upper_rhs - S2 * a.frobenius_norm()).abs() <= 1e-14 * rep.upper_rhs);
    }
}

#[test]
fn scaling_lemma_holds_on_random_draws() {
    let mut r = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let n = 2 * r.gen_range(1..=5);
        let a = random_centro::<f64>(n, n, r.gen()).unwrap();
        let half: Vec<f64> = (0..n / 2).map(|_| r.gen_range(0.05..20.0)).collect();
        let d = ScalingD::from_half(half).unwrap();
        let rep = scaling_lemma_check(&a, &d).unwrap();
        let scale = a.frobenius_norm() * d.varsigma().max(1.0);
        assert!(rep.max_identity_residual() <= 1e-12 * scale);
        assert!(rep.upper_slack() >= -1e-13 * scale.max(1.0));
        assert!(rep.lower_slack() >= -1e-13 * scale.max(1.0));
    }
}

proptest! {
    #[test]
    fn upx_output_is_supported_on_cone(seed in any::<u64>(), l in 1usize..=6) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * l;
        let c = rand_square(&mut r, n);
        let up = upx(&c).unwrap();
        for i in 0..n {
            for j in 0..n {
                if !in_support(n, i, j) {
                    prop_assert_eq!(up[(i, j)], 0.0);
                }
            }
        }
        prop_assert!(is_x_type(&utx(&random_x_type(&mut r, n)).unwrap(), 1e-13));
    }
}
