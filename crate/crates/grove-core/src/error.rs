//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by dataset loading, tree growth, pruning and model I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("row {row}, column {column}: cannot parse {value:?} as a finite number")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },

    #[error("row {row}, column {column}: non-finite feature value")]
    NonFinite { row: usize, column: String },

    #[error("label column {0:?} not found")]
    MissingLabelColumn(String),

    #[error("dataset has a single class {0:?}; at least two are required")]
    SingleClass(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("class {class:?} has only {count} samples; stratified split needs at least 2")]
    ClassTooSmall { class: String, count: usize },

    #[error("test fraction {0} must lie strictly between 0 and 1")]
    InvalidFraction(f64),

    #[error("split leaves the {0} side empty")]
    EmptySide(&'static str),

    #[error("expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node id {0} out of range")]
    UnknownNode(usize),

    #[error("node {0} is a leaf")]
    NotInternal(usize),

    #[error("validation set is empty")]
    EmptyValidation,

    #[error("no training row is out-of-bag for any tree; OOB error is undefined")]
    NoOobCoverage,

    #[error("ensembles do not match: {0}")]
    MismatchedEnsembles(String),

    #[error("tree has {internal} internal nodes, above the enumeration guard of {limit}")]
    GuardExceeded { internal: usize, limit: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
