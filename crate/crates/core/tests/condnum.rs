use centroqx::bounds::{build_first_order_operators, FactorContext, DEFAULT_SIZE_CAP};
use centroqx::centro::random_centro;
use centroqx::condnum::{cond_upper_bounds, condition_numbers, empirical_cond_probe, mixed_comp_cond};
use centroqx::rng::child_seed;
use centroqx::{qx_decompose, CentroMatrix, Matrix64};

fn exact_and_upper(a: &CentroMatrix<f64>) -> centroqx::condnum::CondReport<f64> {
    let f = qx_decompose(a).unwrap();
    let ctx = FactorContext::new(a, &f).unwrap();
    let ops = build_first_order_operators(&ctx.q, &ctx.x, &ctx.x_inv, DEFAULT_SIZE_CAP).unwrap();
    condition_numbers(&ctx, Some(&ops)).unwrap()
}

#[test]
fn identity_values() {
    let a = CentroMatrix::new(Matrix64::identity(2)).unwrap();
    let r = exact_and_upper(&a);
    let e = r.exact.unwrap();
    assert!((e.mx - 1.0).abs() < 1e-12);
    assert!((e.cx - 1.0).abs() < 1e-12);
    assert!(e.mq.abs() < 1e-12);
    assert!(e.cq.abs() < 1e-12);
    assert!((r.upper.mx_upp - 1.0).abs() < 1e-12);
    assert!((r.upper.mq_upp - 2.0).abs() < 1e-12);
    assert!(r.min_relative_slack().unwrap() >= -1e-10);
}

#[test]
fn larger_identities_have_the_same_values() {
    for n in [4, 6, 8] {
        let a = CentroMatrix::new(Matrix64::identity(n)).unwrap();
        let e = exact_and_upper(&a).exact.unwrap();
        assert!((e.mx - 1.0).abs() < 1e-12, "n={n}");
        assert!(e.mq.abs() < 1e-12, "n={n}");
    }
}

#[test]
fn mixed_numbers_are_scale_invariant() {
    let a = random_centro::<f64>(8, 4, 3).unwrap();
    let base = exact_and_upper(&a);
    for c in [1e-3, 1e3] {
        let s = CentroMatrix::new(a.scale(c)).unwrap();
        let r = exact_and_upper(&s);
        let (e0, e1) = (base.exact.unwrap(), r.exact.unwrap());
        for (u, v) in [(e0.mx, e1.mx), (e0.mq, e1.mq), (e0.cx, e1.cx), (e0.cq, e1.cq)] {
            assert!((u - v).abs() <= 1e-12 * u.abs().max(1.0), "c={c}: {u} vs {v}");
        }
        let (u0, u1) = (base.upper, r.upper);
        assert!((u0.mx_upp - u1.mx_upp).abs() <= 1e-12 * u0.mx_upp);
        assert!((u0.mq_upp - u1.mq_upp).abs() <= 1e-12 * u0.mq_upp);
    }
}

#[test]
fn upper_bounds_dominate() {
    for t in 0..40u64 {
        let (m, n) = [(4, 2), (8, 4), (5, 4), (12, 6)][t as usize % 4];
        let a = random_centro::<f64>(m, n, child_seed(11, t)).unwrap();
        let r = exact_and_upper(&a);
        let (e, u) = (r.exact.unwrap(), r.upper);
        let tol = 1.0 + 1e-10;
        assert!(e.mx <= u.mx_upp * tol, "trial {t}: mx {} > {}", e.mx, u.mx_upp);
        assert!(e.cx <= u.cx_upp * tol, "trial {t}: cx {} > {}", e.cx, u.cx_upp);
        assert!(e.mq <= u.mq_upp * tol, "trial {t}: mq {} > {}", e.mq, u.mq_upp);
        assert!(e.cq <= u.cq_upp * tol, "trial {t}: cq {} > {}", e.cq, u.cq_upp);
        assert!(r.min_relative_slack().unwrap() >= -1e-10);
        assert!(e.mq_q_weighted >= 0.0);
    }
}

#[test]
fn upper_bounds_need_no_operators() {
    let a = random_centro::<f64>(30, 20, 4).unwrap();
    let f = qx_decompose(&a).unwrap();
    let ctx = FactorContext::new(&a, &f).unwrap();
    let r = condition_numbers(&ctx, None).unwrap();
    assert!(r.exact.is_none());
    assert!(r.min_relative_slack().is_none());
    let u = cond_upper_bounds(&ctx.a, &ctx.q, &ctx.x, &ctx.x_inv).unwrap();
    assert_eq!(u, r.upper);
    assert!(u.mx_upp > 0.0 && u.cq_upp > 0.0);
}

#[test]
fn probe_stays_below_exact_values() {
    let eps = 1e-8;
    for t in 0..6u64 {
        let (m, n) = [(4, 2), (8, 4), (5, 4)][t as usize % 3];
        let a = random_centro::<f64>(m, n, child_seed(21, t)).unwrap();
        let e = exact_and_upper(&a).exact.unwrap();
        let p = empirical_cond_probe(&a, eps, child_seed(22, t), 50).unwrap();
        assert_eq!(p.samples, 50);
        let tol = 1.0 + 100.0 * eps;
        assert!(p.mx <= e.mx * tol, "trial {t}: {} > {}", p.mx, e.mx);
        assert!(p.cx <= e.cx * tol, "trial {t}: {} > {}", p.cx, e.cx);
        assert!(p.mq <= e.mq * tol, "trial {t}: {} > {}", p.mq, e.mq);
        assert!(p.cq <= e.cq * tol, "trial {t}: {} > {}", p.cq, e.cq);
        assert!(p.mx > 0.0);
    }
}

#[test]
fn probe_at_the_identity() {
    let a = CentroMatrix::new(Matrix64::identity(2)).unwrap();
    let p = empirical_cond_probe(&a, 1e-6, 1, 50).unwrap();
    assert!(p.mx <= 1.0 + 1e-4, "{}", p.mx);
    assert!((p.mx - 1.0).abs() < 1e-4, "{}", p.mx);
    assert!(p.mq < 1e-6);
}

#[test]
fn exact_values_locate_their_maxima() {
    let a = random_centro::<f64>(6, 4, 9).unwrap();
    let f = qx_decompose(&a).unwrap();
    let ctx = FactorContext::new(&a, &f).unwrap();
    let ops = build_first_order_operators(&ctx.q, &ctx.x, &ctx.x_inv, DEFAULT_SIZE_CAP).unwrap();
    let e = mixed_comp_cond(&ctx.a, &ctx.q, &ctx.x, &ops).unwrap();
    let num = ops.gx.abs().matvec(&a.abs().vec());
    assert!(((num[e.mx_argmax] / ctx.x.max_abs()) - e.mx).abs() < 1e-14 * e.mx);
    assert!(e.mx_argmax < num.len());
    assert!(e.mq_argmax < 24);
}
