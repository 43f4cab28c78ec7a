use std::path::PathBuf;

use centroqx::bounds::Gate;
use centroqx::centro::{random_centro, toeplitz_rect};
use centroqx::harness::{
    build_matrix, fd_check, fd_check_along, preset_configs, render_table, run_table, run_trial, verify, DMode, Fault,
    Generator, Preset, TableFormat, TrialConfig, TrialRecord, VerifyOptions,
};
use centroqx::io::write_matrix;
use centroqx::{CentroMatrix, KMode, Matrix64};

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn identity_file() -> PathBuf {
    let p = tmp("identity2.txt");
    write_matrix(&p, &Matrix64::identity(2)).unwrap();
    p
}

#[test]
fn identity_file_trial() {
    let cfg = TrialConfig::new(2, 2, Generator::File(identity_file()), 1e-8, 42);
    let r = run_trial(&cfg);
    assert!(r.error.is_none(), "{:?}", r.error);
    let m = r.measured.unwrap();
    assert!((m.delta_x - m.delta_a).abs() <= 1e-6 * m.delta_a, "{} vs {}", m.delta_x, m.delta_a);
    assert!(!r.domination.is_empty());
    assert!(r.domination.iter().all(|d| d.dominated));
    assert!(r.all_dominated());
    let f = r.factorization.unwrap();
    assert!(f.residual < 1e-15 && f.off_support == 0.0);
}

#[test]
fn trials_are_deterministic() {
    let cfg = TrialConfig::new(8, 4, Generator::Random, 1e-7, 3);
    let mut a = run_trial(&cfg);
    let mut b = run_trial(&cfg);
    a.wall_time_ms = 0.0;
    b.wall_time_ms = 0.0;
    assert_eq!(a, b);
    let other = run_trial(&TrialConfig::new(8, 4, Generator::Random, 1e-7, 4));
    assert_ne!(a.measured, other.measured);
}

#[test]
fn large_perturbation_of_a_nearly_singular_matrix_is_reported() {
    let b: Vec<f64> = vec![1.0, 1.0 - 1e-7, 0.5, 0.25];
    let cfg = TrialConfig::new(4, 4, Generator::IllCond(b), 0.5, 1);
    let r = run_trial(&cfg);
    assert!(r.error.is_none(), "{:?}", r.error);
    let bounds = r.bounds.as_ref().unwrap();
    assert!(!bounds.gate(Gate::NormwiseRefined).unwrap().satisfied);
    assert!(!bounds.gate(Gate::CompRefined).unwrap().satisfied);
    assert!(!bounds.x_refined.applicable);
    assert!(!bounds.q_comp_refined.applicable);
    assert!(r.domination.iter().all(|d| d.bound != "x_refined"));
}

#[test]
fn invalid_configs_become_record_errors() {
    let odd = run_trial(&TrialConfig::new(4, 3, Generator::Random, 1e-8, 1));
    assert!(odd.error.is_some());
    let tall = run_trial(&TrialConfig::new(2, 4, Generator::Random, 1e-8, 1));
    assert!(tall.error.as_deref().unwrap().contains("m >= n"));
    let neg = run_trial(&TrialConfig::new(4, 4, Generator::Random, -1.0, 1));
    assert!(neg.error.is_some());
    let missing = run_trial(&TrialConfig::new(2, 2, Generator::File(tmp("absent.txt")), 1e-8, 1));
    assert!(missing.error.is_some());
    let rank1 = run_trial(&TrialConfig::new(2, 2, Generator::Given(vec![vec![1.0, 1.0], vec![1.0, 1.0]]), 1e-8, 1));
    assert!(rank1.error.is_some());
    assert!(rank1.bounds.is_none());
}

#[test]
fn file_shape_must_match_the_config() {
    let cfg = TrialConfig::new(4, 2, Generator::File(identity_file()), 1e-8, 1);
    assert!(build_matrix(&cfg).is_err());
}

#[test]
fn toeplitz_generator_matches_the_constructor() {
    let cfg = TrialConfig::new(6, 6, Generator::Toeplitz, 1e-8, 5);
    let a = build_matrix(&cfg).unwrap();
    let t = a.transpose();
    assert!((&*a - &t).max_abs() == 0.0);
    for i in 1..6 {
        for j in 1..6 {
            assert_eq!(a[(i, j)], a[(i - 1, j - 1)]);
        }
    }
    let b = vec![3.0, 1.0, 0.5, 0.25];
    let cfg = TrialConfig::new(4, 4, Generator::IllCond(b.clone()), 1e-8, 5);
    assert_eq!(build_matrix(&cfg).unwrap(), toeplitz_rect(&b, 4, 4).unwrap());
}

#[test]
fn identity_scaling_mode_never_beats_auto() {
    let mut cfg = TrialConfig::new(8, 4, Generator::Random, 1e-8, 6);
    let auto = run_trial(&cfg);
    cfg.d_mode = DMode::Identity;
    let ident = run_trial(&cfg);
    let (a, i) = (auto.bounds.unwrap(), ident.bounds.unwrap());
    assert!(a.scaled_kappa <= i.scaled_kappa);
    assert!(a.x_refined.value.unwrap() <= i.x_refined.value.unwrap());
}

#[test]
fn ones_weight_mode_recomputes_eps() {
    let mut cfg = TrialConfig::new(8, 4, Generator::Random, 1e-8, 7);
    let base = run_trial(&cfg);
    cfg.k_mode = KMode::Ones;
    let ones = run_trial(&cfg);
    let (e0, e1) = (base.measured.unwrap().eps, ones.measured.unwrap().eps);
    assert_eq!(e0, 1e-8);
    assert!(e1 > 0.0 && e1 <= e0);
    assert!(ones.all_dominated());
}

#[test]
fn size_cap_skips_operator_bounds() {
    let mut cfg = TrialConfig::new(8, 4, Generator::Random, 1e-8, 8);
    cfg.size_cap = 10;
    let r = run_trial(&cfg);
    let b = r.bounds.unwrap();
    assert!(b.operators_skipped);
    assert!(b.x_majorant_simple.value.is_none());
    assert!(r.cond.unwrap().exact.is_none());
    assert!(r.domination.iter().any(|d| d.bound == "x_refined"));
}

#[test]
fn preset_structure() {
    let t1 = preset_configs(Preset::T1, 42);
    assert_eq!(t1.len(), 9);
    assert_eq!((t1[0].config.m, t1[0].config.n), (20, 10));
    assert_eq!(t1[0].label, "(20,10)");
    assert_eq!(t1[0].config.scale, 1e-7);
    assert!(t1.windows(2).all(|w| w[1].config.scale < w[0].config.scale));

    let t3 = preset_configs(Preset::T3, 42);
    assert!(t3.iter().all(|r| r.config.generator == Generator::Toeplitz && r.config.m == r.config.n));

    let t5 = preset_configs(Preset::T5, 42);
    let labels: Vec<&str> = t5.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["e=1", "e=0", "e=-1", "e=-4", "e=-3"]);
    assert!(t5.iter().all(|r| (r.config.m, r.config.n) == (5, 4)));
    match &t5[0].config.generator {
        Generator::IllCond(b) => {
            assert_eq!(b.len(), 10);
            assert_eq!(b[0], 0.1);
            assert_eq!(b[9], 10.0);
        }
        g => panic!("{g:?}"),
    }
    assert_eq!(preset_configs(Preset::T6, 42).len(), 3);
    let t7 = preset_configs(Preset::T7, 42);
    assert_eq!(t7.len(), 4);
    assert!(t7.iter().all(|r| (r.config.m, r.config.n) == (6, 6)));

    assert_eq!(preset_configs(Preset::T1, 1)[0].config.m, 20);
    assert_ne!(preset_configs(Preset::T1, 1)[0].config.seed, t1[0].config.seed);
    assert!("t8".parse::<Preset>().is_err());
    assert_eq!("T4".parse::<Preset>().unwrap(), Preset::T4);
}

#[test]
fn illconditioned_presets_run_clean() {
    for p in [Preset::T5, Preset::T6, Preset::T7] {
        for (label, r) in run_table(p, 42) {
            assert!(r.error.is_none(), "{} {label}: {:?}", p.name(), r.error);
            assert!(r.all_dominated(), "{} {label}", p.name());
            assert!(r.cond.unwrap().min_relative_slack().unwrap() >= -1e-10);
        }
    }
}

#[test]
fn csv_is_reproducible_and_well_formed() {
    let a = render_table(Preset::T5, &run_table(Preset::T5, 42), TableFormat::Csv).unwrap();
    let b = render_table(Preset::T5, &run_table(Preset::T5, 42), TableFormat::Csv).unwrap();
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 6);
    let width = lines[0].split(',').count();
    assert!(lines.iter().all(|l| l.split(',').count() == width));
    assert!(lines[0].starts_with("row,label,m,n,scale,delta_a"));
    assert!(lines[0].contains("mx_upp"));
    assert!(lines[1].starts_with("1,e=1,5,4,"));

    let t1 = render_table(Preset::T1, &[], TableFormat::Csv).unwrap();
    assert!(!t1.contains("mx_upp"));
}

#[test]
fn markdown_has_a_separator_row() {
    let rows = run_table(Preset::T6, 42);
    let md = render_table(Preset::T6, &rows, TableFormat::Markdown).unwrap();
    let lines: Vec<&str> = md.lines().collect();
    assert_eq!(lines.len(), 2 + rows.len());
    assert!(lines[1].starts_with("|---|"));
}

#[test]
fn json_has_one_record_per_row() {
    let rows = run_table(Preset::T7, 42);
    let js = render_table(Preset::T7, &rows, TableFormat::Json).unwrap();
    let parsed: Vec<TrialRecord> = serde_json::from_str(&js).unwrap();
    assert_eq!(parsed.len(), rows.len());
    let value: serde_json::Value = serde_json::from_str(&js).unwrap();
    let obj = value[0].as_object().unwrap();
    for key in ["config", "error", "measured", "factorization", "bounds", "cond", "domination", "wall_time_ms"] {
        assert!(obj.contains_key(key), "{key}");
    }
    assert_eq!(parsed[0].config, rows[0].1.config);
}

#[test]
fn fd_ratios_show_quadratic_remainder() {
    for (m, n) in [(8, 4), (20, 10)] {
        let rep = fd_check(m, n, 1, &[1e-4, 1e-5, 1e-6, 1e-7]).unwrap();
        assert_eq!(rep.levels.len(), 4);
        assert_eq!(rep.ratios_x.len(), 3);
        assert!(rep.ratios_within(5.0, 20.0), "{:?} {:?}", rep.ratios_x, rep.ratios_q);
        assert!(rep.levels.iter().all(|l| l.r_x / l.eps < 1e3));
    }
    let rep = fd_check(8, 4, 2, &[1e-5, 1e-6]).unwrap();
    assert!(rep.ratios_within(5.0, 20.0));
}

#[test]
fn fd_is_exact_for_diagonal_directions_at_the_identity() {
    let a = CentroMatrix::new(Matrix64::identity(4)).unwrap();
    let dir = CentroMatrix::new(Matrix64::diag(&[1.0, 2.0, 2.0, 1.0])).unwrap();
    let rep = fd_check_along(&a, &dir, &[1e-5, 1e-6]).unwrap();
    for l in &rep.levels {
        assert!(l.r_x < 1e-9, "{}", l.r_x);
        assert!(l.r_q < 1e-9, "{}", l.r_q);
    }
}

#[test]
fn fd_rejects_bad_ladders() {
    assert!(fd_check(8, 4, 1, &[]).is_err());
    assert!(fd_check(8, 4, 1, &[1e-3]).is_err());
    assert!(fd_check(8, 4, 1, &[1e-6, 1e-5]).is_err());
    let a = random_centro::<f64>(8, 4, 1).unwrap();
    let d = random_centro::<f64>(6, 4, 1).unwrap();
    assert!(fd_check_along(&a, &d, &[1e-6]).is_err());
}

#[test]
fn verify_detects_an_injected_fault() {
    let mut opts = VerifyOptions::new(10, 42);
    opts.fd_check = false;
    let clean = verify(&opts).unwrap();
    assert!(clean.passed(), "{}", clean.render());
    assert_eq!(clean.trials, 10);
    assert!(clean.render().ends_with("result                    PASS\n"));

    opts.fault = Fault::FlipRefinedConstant;
    let broken = verify(&opts).unwrap();
    assert!(!broken.passed());
    assert!(broken.violations_by_bound.get("x_refined").copied().unwrap_or(0) > 0);
    assert!(broken.render().contains("FAIL"));
    assert!(verify(&VerifyOptions::new(0, 1)).is_err());
}
