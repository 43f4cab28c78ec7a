use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use centroqx::condnum::empirical_cond_probe;
use centroqx::harness::{
    build_matrix, fd_check, render_table, run_table, run_trial, verify, DMode, Fault, Generator, Preset,
    TableFormat, TrialConfig, VerifyOptions,
};
use centroqx::io::{format_matrix, read_matrix};
use centroqx::qx::verify_qx;
use centroqx::{qx_decompose, CentroMatrix, KMode, Matrix64};

#[derive(Parser)]
#[command(name = "centroqx", version, about = "QX decomposition of centrosymmetric matrices and its perturbation bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a centrosymmetric matrix read from a file.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// Verify the factors and fail when a residual is out of tolerance.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturb a matrix, refactor it and compare the change with every bound.
    Bounds(Selector),
    /// Condition numbers of both factors and their upper bounds.
    Cond {
        #[command(flatten)]
        sel: Selector,
        /// Number of random sign patterns for the sampling probe (0 disables it).
        #[arg(long, default_value_t = 0)]
        probe: usize,
    },
    /// Regenerate one of the experiment tables.
    Table {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_parser = parse_format, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the first-order operators with finite differences.
    FdCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "1e-5,1e-6,1e-7")]
        eps: Vec<f64>,
    },
    /// Run the verification sweep.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        no_fd: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Toeplitz,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum KArg {
    Identity,
    Ones,
}

#[derive(Clone, Copy, ValueEnum)]
enum DArg {
    Auto,
    Identity,
}

#[derive(Args)]
struct Selector {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "random")]
    gen: GenKind,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-8)]
    scale: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "identity")]
    k: KArg,
    #[arg(long, value_enum, default_value = "auto")]
    d: DArg,
    /// Largest m·n for which the dense first-order operators are built.
    #[arg(long, default_value_t = centroqx::bounds::DEFAULT_SIZE_CAP)]
    size_cap: usize,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: centroqx::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<TableFormat, String> {
    s.parse().map_err(|e: centroqx::Error| e.to_string())
}

/// Error that maps to exit status 1 instead of 2.
#[derive(Debug)]
struct AssertionFailed(String);

impl std::fmt::Display for AssertionFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for AssertionFailed {}

fn fail(msg: impl Into<String>) -> anyhow::Error {
    AssertionFailed(msg.into()).into()
}

impl Selector {
    fn config(&self) -> anyhow::Result<TrialConfig> {
        let (generator, m, n) = match self.gen {
            GenKind::File => {
                let Some(path) = &self.input else {
                    bail!("--gen file requires --input FILE");
                };
                let a: Matrix64 = read_matrix(path)?;
                if let (Some(m), Some(n)) = (self.m, self.n) {
                    if (m, n) != a.shape() {
                        bail!("--m/--n give {m}x{n} but {} holds a {}x{} matrix", path.display(), a.rows(), a.cols());
                    }
                }
                (Generator::File(path.clone()), a.rows(), a.cols())
            }
            GenKind::Random | GenKind::Toeplitz => {
                let (Some(m), Some(n)) = (self.m, self.n) else {
                    bail!("--m and --n are required unless --gen file is used");
                };
                let g = if matches!(self.gen, GenKind::Random) {
                    Generator::Random
                } else {
                    if m != n {
                        bail!("the Toeplitz generator needs m = n, got {m}x{n}");
                    }
                    Generator::Toeplitz
                };
                (g, m, n)
            }
        };
        let mut cfg = TrialConfig::new(m, n, generator, self.scale, self.seed);
        cfg.k_mode = match self.k {
            KArg::Identity => KMode::Identity,
            KArg::Ones => KMode::Ones,
        };
        cfg.d_mode = match self.d {
            DArg::Auto => DMode::Auto,
            DArg::Identity => DMode::Identity,
        };
        cfg.size_cap = self.size_cap;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => print_out(text),
    }
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn print_out(text: &str) -> anyhow::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn decompose(input: &Path, check: bool, out: Option<&Path>) -> anyhow::Result<()> {
    let a = CentroMatrix::new(read_matrix::<f64>(input)?)?;
    let f = qx_decompose(&a)?;
    let text = format!("# Q\n{}# X\n{}", format_matrix(&f.q), format_matrix(&f.x));
    emit(out, &text)?;
    if check {
        let rep = verify_qx(&a, &f)?;
        let n = a.cols() as f64;
        eprintln!("{}", serde_json::to_string_pretty(&rep)?);
        if rep.residual > 1e-12 || rep.orthogonality > 1e-12 * n || rep.perplectic > 1e-12 * n || rep.off_support != 0.0 {
            return Err(fail("factorization check failed"));
        }
    }
    Ok(())
}

fn bounds(sel: &Selector) -> anyhow::Result<()> {
    let record = run_trial(&sel.config()?);
    print_out(&format!("{}\n", serde_json::to_string_pretty(&record)?))?;
    if let Some(e) = &record.error {
        bail!("{e}");
    }
    let bad: Vec<&str> = record.violations().map(|d| d.bound.as_str()).collect();
    if !bad.is_empty() {
        return Err(fail(format!("measured change exceeds {}", bad.join(", "))));
    }
    Ok(())
}

fn cond(sel: &Selector, probe: usize) -> anyhow::Result<()> {
    let cfg = sel.config()?;
    let record = run_trial(&cfg);
    if let Some(e) = &record.error {
        bail!("{e}");
    }
    let mut out = serde_json::json!({ "cond": record.cond });
    if probe > 0 {
        let a = build_matrix(&cfg)?;
        out["probe"] = serde_json::to_value(empirical_cond_probe(&a, cfg.scale, cfg.seed, probe)?)?;
    }
    print_out(&format!("{}\n", serde_json::to_string_pretty(&out)?))?;
    if let Some(s) = record.cond.and_then(|c| c.min_relative_slack()) {
        if s < -1e-10 {
            return Err(fail(format!("condition number exceeds its upper bound (relative slack {s:.3e})")));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Decompose { input, check, out } => decompose(&input, check, out.as_deref()),
        Command::Bounds(sel) => bounds(&sel),
        Command::Cond { sel, probe } => cond(&sel, probe),
        Command::Table { preset, seed, format, out } => {
            let rows = run_table(preset, seed);
            emit(out.as_deref(), &render_table(preset, &rows, format)?)
        }
        Command::FdCheck { m, n, seed, eps } => {
            let rep = fd_check(m, n, seed, &eps)?;
            print_out(&format!("{}\n", serde_json::to_string_pretty(&rep)?))?;
            if !rep.ratios_within(5.0, 20.0) {
                return Err(fail("finite-difference ratios outside [5, 20]"));
            }
            Ok(())
        }
        Command::Verify { trials, seed, no_fd, inject_fault } => {
            let mut opts = VerifyOptions::new(trials, seed);
            opts.fd_check = !no_fd;
            if inject_fault {
                opts.fault = Fault::FlipRefinedConstant;
            }
            let summary = verify(&opts)?;
            print_out(&summary.render())?;
            if !summary.passed() {
                return Err(fail(format!("{} hard failures", summary.hard_failures())));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<AssertionFailed>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
