use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::Notation;
use crate::error::{Error, Result};
use crate::harness::trial::{run_trial, Generator, TrialConfig, TrialRecord};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::T1,
        Preset::T2,
        Preset::T3,
        Preset::T4,
        Preset::T5,
        Preset::T6,
        Preset::T7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::T1 => "t1",
            Preset::T2 => "t2",
            Preset::T3 => "t3",
            Preset::T4 => "t4",
            Preset::T5 => "t5",
            Preset::T6 => "t6",
            Preset::T7 => "t7",
        }
    }

    /// Whether the table lists condition numbers.
    pub fn has_condition_numbers(self) -> bool {
        matches!(self, Preset::T4 | Preset::T5 | Preset::T6 | Preset::T7)
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset '{s}', expected t1..t7")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}', expected csv, md or json"))),
        }
    }
}

const RECT_SIZES: [(usize, usize); 9] = [
    (20, 10),
    (30, 20),
    (40, 20),
    (50, 30),
    (60, 30),
    (70, 40),
    (150, 50),
    (200, 60),
    (300, 100),
];

const SQUARE_SIZES: [usize; 9] = [10, 10, 20, 20, 30, 30, 100, 110, 120];

/// Perturbation size of the ill-conditioned examples.
const ILLCOND_SCALE: f64 = 1e-10;

fn ladder(row: usize) -> f64 {
    10f64.powi(-(6 + row as i32 + 1))
}

fn pow10(e: i32) -> f64 {
    10f64.powi(e)
}

fn t5_vector(e: i32) -> Vec<f64> {
    let mut b = vec![pow10(-e)];
    b.extend((2..=9).map(|k| 1.0 / (1000.0 * k as f64)));
    b.push(pow10(e));
    b
}

fn t6_vector(e: i32) -> Vec<f64> {
    let s = pow10(-e);
    vec![
        1000.0,
        1.0 / 2000.0,
        1.0 / (3.0 * s),
        1.0 / 4000.0,
        1.0 / 5000.0,
        1.0 / 6000.0,
        1.0 / (7.0 * s),
        1.0 / 8000.0,
        1.0 / 9000.0,
        1.0 / 1000.0,
    ]
}

fn t7_vector(e: i32) -> Vec<f64> {
    let s = pow10(-e);
    let mut b = vec![s];
    b.extend((2..=9).map(|k| 1.0 / (1000.0 * k as f64)));
    b.push(pow10(e));
    b.extend([
        1.0 / 4000.0,
        1.0 / 5000.0,
        1.0 / 6000.0,
        1.0 / (7.0 * s),
        1.0 / 8000.0,
        1.0 / 9000.0,
        1.0 / 1000.0,
        1.0 / (3.0 * s),
    ]);
    b
}

/// One labelled row of a preset.
#[derive(Clone, Debug, PartialEq)]
pub struct PresetRow {
    pub label: String,
    pub config: TrialConfig,
}

/// The trial configurations of a preset, one per table row.
pub fn preset_configs(preset: Preset, seed: u64) -> Vec<PresetRow> {
    let row_seed = |row: usize| rng::child_seed(seed, row as u64);
    let plain = |row: usize, m: usize, n: usize, generator: Generator| PresetRow {
        label: format!("({m},{n})"),
        config: TrialConfig::new(m, n, generator, ladder(row), row_seed(row)),
    };
    let ill = |row: usize, m: usize, n: usize, e: i32, b: Vec<f64>| PresetRow {
        label: format!("e={e}"),
        config: TrialConfig::new(m, n, Generator::IllCond(b), ILLCOND_SCALE, row_seed(row)),
    };
    match preset {
        Preset::T1 | Preset::T4 => RECT_SIZES
            .iter()
            .enumerate()
            .map(|(row, &(m, n))| plain(row, m, n, Generator::Random))
            .collect(),
        Preset::T2 => SQUARE_SIZES
            .iter()
            .enumerate()
            .map(|(row, &n)| plain(row, n, n, Generator::Random))
            .collect(),
        Preset::T3 => SQUARE_SIZES
            .iter()
            .enumerate()
            .map(|(row, &n)| plain(row, n, n, Generator::Toeplitz))
            .collect(),
        Preset::T5 => [1, 0, -1, -4, -3]
            .into_iter()
            .enumerate()
            .map(|(row, e)| ill(row, 5, 4, e, t5_vector(e)))
            .collect(),
        Preset::T6 => [-4, 4, 3]
            .into_iter()
            .enumerate()
            .map(|(row, e)| ill(row, 5, 4, e, t6_vector(e)))
            .collect(),
        Preset::T7 => [2, 3, 4, 5]
            .into_iter()
            .enumerate()
            .map(|(row, e)| ill(row, 6, 6, e, t7_vector(e)))
            .collect(),
    }
}

/// Runs every row of a preset, in row order.
pub fn run_table(preset: Preset, seed: u64) -> Vec<(String, TrialRecord)> {
    preset_configs(preset, seed)
        .into_iter()
        .map(|row| {
            let record = run_trial(&row.config);
            (row.label, record)
        })
        .collect()
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.6e}"),
        None => "NA".into(),
    }
}

fn notation_cells(n: &Notation<f64>) -> [Option<f64>; 7] {
    [n.b_dx1, n.b_dx2, n.b_dx3, n.b_dx4, n.b_dq1, n.b_dq2, n.b_dq3]
}

const NOTATION_NAMES: [&str; 7] = ["b_dx1", "b_dx2", "b_dx3", "b_dx4", "b_dq1", "b_dq2", "b_dq3"];

fn header(preset: Preset) -> Vec<String> {
    let mut h: Vec<String> = [
        "row", "label", "m", "n", "scale", "delta_a", "delta_x", "delta_q", "qt_delta_q", "kappa2",
        "cond_x",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    h.extend(NOTATION_NAMES.iter().map(|s| s.to_string()));
    h.extend(NOTATION_NAMES.iter().map(|s| format!("{s}_coef")));
    if preset.has_condition_numbers() {
        h.extend(
            ["mx", "cx", "mq", "cq", "mq_q_weighted", "mx_upp", "cx_upp", "mq_upp", "cq_upp"]
                .iter()
                .map(|s| s.to_string()),
        );
    }
    h.extend(["dominated", "error"].iter().map(|s| s.to_string()));
    h
}

fn cells(preset: Preset, row: usize, label: &str, r: &TrialRecord) -> Vec<String> {
    let c = &r.config;
    let mut out = vec![
        (row + 1).to_string(),
        label.to_string(),
        c.m.to_string(),
        c.n.to_string(),
        format!("{:.1e}", c.scale),
    ];
    let m = r.measured;
    out.extend(
        [
            m.map(|m| m.delta_a),
            m.map(|m| m.delta_x),
            m.map(|m| m.delta_q),
            m.map(|m| m.qt_delta_q),
            m.map(|m| m.kappa2),
            m.map(|m| m.cond_x),
        ]
        .map(num),
    );
    let (abs, coef) = match &r.bounds {
        Some(b) => (notation_cells(&b.notation), notation_cells(&b.notation_coefficient)),
        None => ([None; 7], [None; 7]),
    };
    out.extend(abs.map(num));
    out.extend(coef.map(num));
    if preset.has_condition_numbers() {
        let exact = r.cond.and_then(|c| c.exact);
        let upper = r.cond.map(|c| c.upper);
        out.extend(
            [
                exact.map(|e| e.mx),
                exact.map(|e| e.cx),
                exact.map(|e| e.mq),
                exact.map(|e| e.cq),
                exact.map(|e| e.mq_q_weighted),
                upper.map(|u| u.mx_upp),
                upper.map(|u| u.cx_upp),
                upper.map(|u| u.mq_upp),
                upper.map(|u| u.cq_upp),
            ]
            .map(num),
        );
    }
    out.push(if r.error.is_some() { "NA".into() } else { r.all_dominated().to_string() });
    out.push(r.error.clone().unwrap_or_default().replace([',', '\n'], ";"));
    out
}

/// Renders table rows. CSV and Markdown leave out wall time so that output is reproducible.
pub fn render_table(preset: Preset, rows: &[(String, TrialRecord)], format: TableFormat) -> Result<String> {
    let mut s = String::new();
    match format {
        TableFormat::Csv => {
            s.push_str(&header(preset).join(","));
            s.push('\n');
            for (i, (label, r)) in rows.iter().enumerate() {
                let line: Vec<String> = cells(preset, i, label, r)
                    .into_iter()
                    .map(|c| if c.contains(',') { format!("\"{c}\"") } else { c })
                    .collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
        }
        TableFormat::Markdown => {
            let h = header(preset);
            let _ = writeln!(s, "| {} |", h.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(h.len()));
            for (i, (label, r)) in rows.iter().enumerate() {
                let _ = writeln!(s, "| {} |", cells(preset, i, label, r).join(" | "));
            }
        }
        TableFormat::Json => {
            let records: Vec<&TrialRecord> = rows.iter().map(|(_, r)| r).collect();
            s = serde_json::to_string_pretty(&records).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s.push('\n');
        }
    }
    Ok(s)
}
