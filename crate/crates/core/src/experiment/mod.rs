//! Benchmark runs: configuration, the solution methods side by side,
//! comparison metrics and file output.

mod config;
mod output;
mod riccati_check;
mod run;

pub use config::{ExperimentConfig, Method, OutputFormat, PartialConfig};
pub use output::{emit_outputs, summary_json};
pub use riccati_check::{riccati_residuals, RiccatiResiduals};
pub use run::{
    compare_methods, phase_shift_series, run_experiment, ComparisonReport, MethodDeviation,
    MethodResult, PhaseGap,
};

use std::path::PathBuf;

/// Failure of a run, classified by what the user has to fix.
#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Numerical {
        context: String,
        #[source]
        source: crate::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ExperimentError {
    /// Process exit code: 2 for configuration, 3 for numerical failure, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::Numerical { .. } => 3,
            ExperimentError::Io { .. } => 1,
        }
    }

    /// Cell index of a numerical failure, if the error carries one.
    pub fn cell(&self) -> Option<i64> {
        match self {
            ExperimentError::Numerical { source, .. } => source.cell(),
            _ => None,
        }
    }

    pub(crate) fn numerical(context: impl Into<String>) -> impl FnOnce(crate::Error) -> Self {
        let context = context.into();
        move |source| ExperimentError::Numerical { context, source }
    }
}
