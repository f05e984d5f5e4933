use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated an API precondition (mismatched jets, bad orders, bad parameters).
    #[error("usage: {0}")]
    Usage(String),

    /// An operation hit a singular point, e.g. division by a jet whose value is zero.
    #[error("singularity in {op}: value {value:e}")]
    Singularity { op: &'static str, value: f64 },

    /// A point lies outside the open interval an operation is defined on.
    #[error("domain: {what} at {value:e}")]
    Domain { what: String, value: f64 },

    /// The sampled function returned a non-finite value at node `k`.
    #[error("sampling: f(t) is not finite at node k = {k} (t = {t:e}, value = {value})")]
    Sampling { k: i64, t: f64, value: f64 },

    /// The weight function underflowed to zero at node `k`.
    #[error("singular weight at node k = {k} (t = {t:e})")]
    SingularWeight { k: i64, t: f64 },

    /// A sweep failed at a specific (n, t, l).
    #[error("sweep failed at n = {n}, t = {t:e}, l = {l}: {source}")]
    Sweep {
        n: usize,
        t: f64,
        l: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("rate fit needs at least 3 points above the roundoff floor, found {found}")]
    TooFewPoints { found: usize },

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: malformed report: {reason}")]
    Parse { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(what: impl Into<String>, value: f64) -> Self {
        Error::Domain {
            what: what.into(),
            value,
        }
    }
}
