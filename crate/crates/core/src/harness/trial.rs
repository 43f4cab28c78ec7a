use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    build_first_order_operators, evaluate_bounds, BoundReport, FactorContext, OperatorNorms,
    DEFAULT_SIZE_CAP,
};
use crate::centro::{random_centro, random_centro_perturbation_with, toeplitz_rect, CentroMatrix, KMode};
use crate::condnum::{condition_numbers, CondReport};
use crate::error::{Error, Result};
use crate::qx::{verify_qx, VerificationReport};
use crate::{io, qx_decompose, rng, Matrix};

/// How the test matrix `A` is produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// U(−1, 1) entries mirrored into centrosymmetric form.
    Random,
    /// Symmetric Toeplitz matrix of a random U(−1, 1) vector.
    Toeplitz,
    /// Matrix read from a file in the plain-text format.
    File(PathBuf),
    /// Matrix given inline.
    Given(Vec<Vec<f64>>),
    /// Centrosymmetric part of the leading `m×n` block of `toeplitz(b)`.
    IllCond(Vec<f64>),
}

impl Generator {
    pub fn label(&self) -> String {
        match self {
            Generator::Random => "random".into(),
            Generator::Toeplitz => "toeplitz".into(),
            Generator::File(p) => format!("file:{}", p.display()),
            Generator::Given(_) => "given".into(),
            Generator::IllCond(_) => "illcond".into(),
        }
    }
}

/// Which scalings compete in the infimum over `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DMode {
    /// `I` and the row-norm scaling of `X`.
    Auto,
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub m: usize,
    pub n: usize,
    pub generator: Generator,
    /// Perturbation size `eps` in `ΔA = eps·(E∘A)`.
    pub scale: f64,
    pub seed: u64,
    pub k_mode: KMode,
    pub d_mode: DMode,
    /// Largest `m·n` for which the dense first-order operators are built.
    pub size_cap: usize,
}

impl TrialConfig {
    pub fn new(m: usize, n: usize, generator: Generator, scale: f64, seed: u64) -> Self {
        Self {
            m,
            n,
            generator,
            scale,
            seed,
            k_mode: KMode::Identity,
            d_mode: DMode::Auto,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n % 2 == 1 {
            return Err(Error::OddColumnDimension { n: self.n });
        }
        if self.m < self.n {
            return Err(Error::InvalidArgument(format!(
                "need m >= n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "perturbation scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

/// Builds the unperturbed matrix described by a configuration.
pub fn build_matrix(cfg: &TrialConfig) -> Result<CentroMatrix<f64>> {
    let (m, n) = (cfg.m, cfg.n);
    let a = match &cfg.generator {
        Generator::Random => random_centro(m, n, cfg.seed)?,
        Generator::Toeplitz => {
            let mut r = rng::stream(cfg.seed, rng::MATRIX_STREAM);
            let b: Vec<f64> = (0..m.max(n)).map(|_| rng::uniform(&mut r)).collect();
            toeplitz_rect(&b, m, n)?
        }
        Generator::File(path) => CentroMatrix::new(io::read_matrix(path)?)?,
        Generator::Given(rows) => CentroMatrix::new(Matrix::from_rows(rows))?,
        Generator::IllCond(b) => toeplitz_rect(b, m, n)?,
    };
    if a.shape() != (m, n) {
        return Err(Error::DimensionMismatch {
            expected: format!("{m}x{n}"),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    Ok(a)
}

/// Measured changes of the factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    /// `‖ΔA‖_F`
    pub delta_a: f64,
    /// `‖ΔX‖_F`
    pub delta_x: f64,
    /// `‖ΔQ‖_F`
    pub delta_q: f64,
    /// `‖QᵀΔQ‖_F`
    pub qt_delta_q: f64,
    /// `ε` of the componentwise model.
    pub eps: f64,
    pub kappa2: f64,
    pub cond_x: f64,
}

/// Whether one applicable bound covers the measured change.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domination {
    pub bound: String,
    pub value: f64,
    pub measured: f64,
    pub dominated: bool,
    /// Part of the asserted set (as opposed to reported only).
    pub asserted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config: TrialConfig,
    /// Set when the trial could not be evaluated (rank deficiency, bad input, ...).
    pub error: Option<String>,
    pub measured: Option<Measured>,
    /// Residuals of the unperturbed factorization.
    pub factorization: Option<VerificationReport>,
    pub bounds: Option<BoundReport<f64>>,
    pub cond: Option<CondReport<f64>>,
    pub domination: Vec<Domination>,
    pub wall_time_ms: f64,
}

impl TrialRecord {
    /// Asserted bounds that failed to cover the measured change.
    pub fn violations(&self) -> impl Iterator<Item = &Domination> {
        self.domination.iter().filter(|d| d.asserted && !d.dominated)
    }

    pub fn all_dominated(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Absolute slack granted to every domination check.
pub const DOMINATION_TOL: f64 = 1e-15;

pub fn run_trial(cfg: &TrialConfig) -> TrialRecord {
    let start = Instant::now();
    let mut record = TrialRecord {
        config: cfg.clone(),
        error: None,
        measured: None,
        factorization: None,
        bounds: None,
        cond: None,
        domination: Vec::new(),
        wall_time_ms: 0.0,
    };
    if let Err(e) = evaluate(cfg, &mut record) {
        record.error = Some(e.to_string());
    }
    record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

fn evaluate(cfg: &TrialConfig, record: &mut TrialRecord) -> Result<()> {
    cfg.validate()?;
    let a = build_matrix(cfg)?;
    let pert = random_centro_perturbation_with(&a, cfg.scale, cfg.seed, cfg.k_mode);
    let f = qx_decompose(&a)?;
    record.factorization = Some(verify_qx(&a, &f)?);
    let ft = qx_decompose(&a.plus(&pert.delta_a))?;
    let dx = &ft.x - &f.x;
    let dq = &ft.q - &f.q;

    let mut ctx = FactorContext::new(&a, &f)?;
    if cfg.d_mode == DMode::Identity {
        ctx.scalings.truncate(1);
    }
    let measured = Measured {
        delta_a: pert.delta_a.frobenius_norm(),
        delta_x: dx.frobenius_norm(),
        delta_q: dq.frobenius_norm(),
        qt_delta_q: f.q.t_matmul(&dq).frobenius_norm(),
        eps: pert.eps_eff,
        kappa2: ctx.kappa2,
        cond_x: ctx.cond_x,
    };
    record.measured = Some(measured);

    let ops = match build_first_order_operators(&f.q, &f.x, &ctx.x_inv, cfg.size_cap) {
        Ok(ops) => Some(ops),
        Err(Error::SizeCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let norms = ops.as_ref().map(|o| OperatorNorms::compute(o, &f.x)).transpose()?;
    let bounds = evaluate_bounds(&ctx, &pert.delta_a, &pert.k, pert.eps_eff, norms.as_ref())?;
    record.cond = Some(condition_numbers(&ctx, ops.as_ref())?);

    let mut dom = Vec::new();
    let mut push = |name: &str, b: crate::bounds::Bound<f64>, measured: f64, asserted: bool| {
        if let Some(v) = b.get() {
            dom.push(Domination {
                bound: name.to_string(),
                value: v,
                measured,
                dominated: measured <= v + DOMINATION_TOL,
                asserted,
            });
        }
    };
    for (name, b) in bounds.x_bounds() {
        push(name, b, measured.delta_x, true);
    }
    for (name, b) in bounds.x_bounds_reported() {
        push(name, b, measured.delta_x, false);
    }
    for (name, b) in bounds.q_bounds() {
        push(name, b, measured.delta_q, true);
    }
    record.domination = dom;
    record.bounds = Some(bounds);
    Ok(())
}
