//! Experiment driver: single trials, preset tables, finite-difference checks of the
//! first-order operators, and the verification sweep.

mod fdcheck;
mod table;
mod trial;
mod verify;

pub use fdcheck::{fd_check, fd_check_along, FdCheckReport, FdLevel};
pub use table::{preset_configs, render_table, run_table, Preset, PresetRow, TableFormat};
pub use trial::{
    build_matrix, run_trial, DMode, DOMINATION_TOL, Domination, Generator, Measured, TrialConfig, TrialRecord,
};
pub use verify::{verify, verify_config, Fault, VerifyOptions, VerifySummary, VERIFY_SCALES, VERIFY_SIZES};
