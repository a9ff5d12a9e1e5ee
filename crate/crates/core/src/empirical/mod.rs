//! Empirical copulas, resubstitution estimators and sample statistics.

mod grid;
mod sample;
mod stats;

use thiserror::Error;

pub use grid::{
    pqd_evidence, resub_ccex, resub_estimates, resub_scex, EmpiricalGrid, GridKind, Normalization,
    PqdEvidence, ResubEstimates,
};
pub use sample::{
    load_sample, load_sample_path, parse_sample, surgery_sample, BivariateSample, SURGERY_CSV,
};
pub use stats::{sample_dependence, SampleDependence};

#[derive(Debug, Error)]
pub enum EmpiricalError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("need at least 2 rows, found {0}")]
    TooFewRows(usize),
    #[error("row {0} has a non-finite value")]
    NonFinite(usize),
    #[error("{0}")]
    Io(String),
    #[error("degenerate sample: {0}")]
    Degenerate(&'static str),
    #[error("expected a {expected:?} grid, found {found:?}")]
    GridKind { expected: GridKind, found: GridKind },
}
