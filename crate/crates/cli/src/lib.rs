//! Config-driven runner behind the `decohere` binary.
//!
//! A run reads one JSON experiment config, executes the named pipeline
//! (`spinbath_gtfd`, `mhi_context` or `liealg_contract`) and writes its
//! outputs plus a `report.json` that echoes the config, lists every emitted
//! file and records wall time.

pub mod config;
pub mod demos;
pub mod run;

pub use config::{parse_config, validate, Diagnostic, Experiment, ExperimentSpec};
pub use run::{run_config, RunReport};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config has {} problem(s)", .0.len())]
    Validation(Vec<Diagnostic>),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] decohere_core::Error),
    #[error(transparent)]
    LieAlg(#[from] decohere_liealg::Error),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    /// Process exit code: 1 for schema problems, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
