//! Parameter sweeps over the accelerate-then-filter pipeline.
//!
//! A [`SweepSpec`] names a state family, fixed parameter values and a list of
//! grid axes. [`run_sweep`] evaluates the Cartesian product of the axes in
//! parallel and returns rows in lexicographic grid order. [`emit`] writes them
//! as CSV or JSON.

mod emit;
mod preset;
mod run;
mod spec;
mod verify;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub use emit::{emit, format_float, parse_json_rows, to_csv_string, to_json_string, CSV_HEADER};
pub use preset::{figure_preset, PRESET_NAMES};
pub use run::{evaluate_point, run_sweep, PointStatus, SweepRow};
pub use spec::{parse_spec, Family, FilterOrder, GridAxis, OutputFormat, Param, SweepSpec};
pub use verify::{kraus_suite, verify, SuiteResult, VerifyReport, DEFAULT_SEED};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parameter `{param}`: {reason}")]
    Domain { param: String, reason: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    State(#[from] crate::Error),

    #[error("nothing to emit: sweep produced no rows")]
    EmptyRows,

    #[error("malformed row data: {0}")]
    Rows(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl SweepError {
    pub(crate) fn domain(param: impl Into<String>, reason: impl Into<String>) -> Self {
        SweepError::Domain {
            param: param.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        SweepError::Parse {
            line,
            message: message.into(),
        }
    }
}
