//! Experiment driver: streams through the maintainer and the baselines, cost
//! ratios at checkpoints, ε sweeps, CSV output and SVG charts.

mod config;
mod experiment;
mod plot;

use std::path::PathBuf;

use thiserror::Error;

use crate::baselines::BaselineError;
use crate::maintainer::MaintainerError;
use crate::sdd::SddError;
use crate::streams::StreamError;

pub use config::{EpsSpec, ExperimentConfig, InputSpec};
pub use experiment::{
    derive_seed, epsilon_sweep, load_input, ratio, read_csv, run_experiment, run_single,
    stream_length, verify_runs, write_csv, CheckpointRow, RunOutput, RunSummary, SeedPurpose,
    SweepPoint, SweepResult, VerifySummary, CSV_HEADER,
};
pub use plot::emit_plot;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{}: no data rows", .0.display())]
    EmptyInput(PathBuf),
    #[error("{}: {msg}", path.display())]
    Parse { path: PathBuf, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Maintainer(#[from] MaintainerError),
    #[error(transparent)]
    Sdd(#[from] SddError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
}
