use std::path::PathBuf;

use thiserror::Error;

use crate::farey::Fraction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what} bound exceeded: {value} > {bound}")]
    Capacity {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("no fraction with denominator {denominator} in ({lo}, {hi})")]
    Absent {
        denominator: u64,
        lo: Fraction,
        hi: Fraction,
    },

    #[error("denominator {denominator} is ambiguous in ({lo}, {hi}): {found:?}")]
    Ambiguous {
        denominator: u64,
        lo: Fraction,
        hi: Fraction,
        found: Vec<Fraction>,
    },

    /// A good/cogood box could not be determined under the active signature
    /// convention.
    #[error("signature convention failure: {0}")]
    Convention(String),

    #[error("oracle failure: {0}")]
    Oracle(String),

    /// The sign-representation recurrence produced something it should not.
    #[error("prediction failure: {0}")]
    Prediction(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}
