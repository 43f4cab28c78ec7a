use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::Gate;
use crate::error::{Error, Result};
use crate::harness::fdcheck::fd_check;
use crate::harness::trial::{run_trial, Generator, TrialConfig, TrialRecord, DOMINATION_TOL};
use crate::rng;

/// Sizes swept by the verification run.
pub const VERIFY_SIZES: [(usize, usize); 5] = [(4, 2), (8, 4), (20, 10), (31, 20), (40, 40)];
/// Perturbation sizes swept by the verification run.
pub const VERIFY_SCALES: [f64; 2] = [1e-6, 1e-9];

/// Deliberate defects used to show that the sweep detects broken bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    #[default]
    None,
    /// Negates the leading constant of the refined normwise bound for `X`.
    FlipRefinedConstant,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub fault: Fault,
    /// Also run the finite-difference check of the first-order operators.
    pub fd_check: bool,
}

impl VerifyOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            fault: Fault::None,
            fd_check: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub trials: usize,
    /// Trials in which the refined normwise gate held.
    pub gated_trials: usize,
    pub trial_errors: usize,
    pub factorization_failures: usize,
    pub domination_checks: usize,
    pub domination_violations: usize,
    /// Violations per bound name.
    pub violations_by_bound: BTreeMap<String, usize>,
    /// Violations of bounds that are reported but not asserted.
    pub reported_only_violations: BTreeMap<String, usize>,
    pub tightness_failures: usize,
    pub ordering_failures: usize,
    pub cond_failures: usize,
    pub fd_failures: usize,
    pub worst_residual: f64,
    pub min_cond_slack: f64,
}

impl VerifySummary {
    pub fn hard_failures(&self) -> usize {
        self.trial_errors
            + self.factorization_failures
            + self.domination_violations
            + self.tightness_failures
            + self.ordering_failures
            + self.cond_failures
            + self.fd_failures
    }

    pub fn passed(&self) -> bool {
        self.hard_failures() == 0
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<26}{v}\n"));
        line("trials", self.trials.to_string());
        line("gated trials", self.gated_trials.to_string());
        line("trial errors", self.trial_errors.to_string());
        line("factorization failures", self.factorization_failures.to_string());
        line("worst residual", format!("{:.3e}", self.worst_residual));
        line("domination checks", self.domination_checks.to_string());
        line("domination violations", self.domination_violations.to_string());
        for (k, v) in &self.violations_by_bound {
            line(&format!("  {k}"), v.to_string());
        }
        for (k, v) in &self.reported_only_violations {
            line(&format!("  {k} (reported)"), v.to_string());
        }
        line("tightness failures", self.tightness_failures.to_string());
        line("ordering failures", self.ordering_failures.to_string());
        line("cond failures", self.cond_failures.to_string());
        line("min cond slack", format!("{:.3e}", self.min_cond_slack));
        line("fd failures", self.fd_failures.to_string());
        line("result", if self.passed() { "PASS".into() } else { "FAIL".into() });
        s
    }
}

/// Configuration of the `index`-th verification trial.
pub fn verify_config(seed: u64, index: usize) -> TrialConfig {
    let (m, n) = VERIFY_SIZES[index % VERIFY_SIZES.len()];
    let scale = VERIFY_SCALES[(index / VERIFY_SIZES.len()) % VERIFY_SCALES.len()];
    TrialConfig::new(m, n, Generator::Random, scale, rng::child_seed(seed, index as u64))
}

fn inject(record: &mut TrialRecord, fault: Fault) {
    if fault == Fault::FlipRefinedConstant {
        if let Some(b) = record.bounds.as_mut() {
            b.x_refined.value = b.x_refined.value.map(|v| -v);
            let v = b.x_refined.get();
            for d in record.domination.iter_mut().filter(|d| d.bound == "x_refined") {
                if let Some(v) = v {
                    d.value = v;
                    d.dominated = d.measured <= v + DOMINATION_TOL;
                }
            }
        }
    }
}

fn tally(summary: &mut VerifySummary, r: &TrialRecord) {
    summary.trials += 1;
    if r.error.is_some() {
        summary.trial_errors += 1;
        return;
    }
    let n = r.config.n as f64;
    if let Some(f) = &r.factorization {
        summary.worst_residual = summary.worst_residual.max(f.residual);
        let ok = f.residual <= 1e-12 && f.orthogonality <= 1e-12 * n && f.perplectic <= 1e-12 * n && f.off_support == 0.0;
        if !ok {
            summary.factorization_failures += 1;
        }
    }
    let Some(b) = &r.bounds else { return };
    if b.gate(Gate::NormwiseRefined).is_some_and(|g| g.satisfied) {
        summary.gated_trials += 1;
    }
    for d in &r.domination {
        if d.asserted {
            summary.domination_checks += 1;
        }
        if !d.dominated {
            let map = if d.asserted {
                summary.domination_violations += 1;
                &mut summary.violations_by_bound
            } else {
                &mut summary.reported_only_violations
            };
            *map.entry(d.bound.clone()).or_default() += 1;
        }
    }
    if let Some(t) = &b.tightness {
        if !t.holds(1e-10) {
            summary.tightness_failures += 1;
        }
    }
    if let (Some(simple), Some(refined)) = (b.x_majorant_simple.get(), b.x_refined.get()) {
        if simple > refined * (1.0 + 1e-12) {
            summary.ordering_failures += 1;
        }
    }
    if let Some(c) = &r.cond {
        if let Some(s) = c.min_relative_slack() {
            summary.min_cond_slack = summary.min_cond_slack.min(s);
            if s < -1e-10 {
                summary.cond_failures += 1;
            }
        }
    }
}

/// Runs the verification sweep.
pub fn verify(opts: &VerifyOptions) -> Result<VerifySummary> {
    if opts.trials == 0 {
        return Err(Error::InvalidArgument("verify needs at least one trial".into()));
    }
    let mut summary = VerifySummary {
        min_cond_slack: f64::INFINITY,
        ..Default::default()
    };
    for i in 0..opts.trials {
        let mut record = run_trial(&verify_config(opts.seed, i));
        inject(&mut record, opts.fault);
        tally(&mut summary, &record);
    }
    if opts.fd_check {
        let ladder = [1e-4, 1e-5, 1e-6, 1e-7];
        for (k, (m, n)) in [(8, 4), (20, 10)].into_iter().enumerate() {
            match fd_check(m, n, rng::child_seed(opts.seed, u64::MAX - k as u64), &ladder) {
                Ok(rep) if rep.ratios_within(5.0, 20.0) => {}
                _ => summary.fd_failures += 1,
            }
        }
    }
    if !summary.min_cond_slack.is_finite() {
        summary.min_cond_slack = 0.0;
    }
    Ok(summary)
}
