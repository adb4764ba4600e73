use std::path::PathBuf;

/// Errors shared by every module in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("n_max = {requested} exceeds the configured capacity of {limit} entries")]
    Capacity { requested: u64, limit: u64 },

    #[error("table covers n <= {available} but the request needs n <= {required}")]
    TableTooSmall { required: u64, available: u64 },

    #[error("argument {x} is outside the tabulated range [0, {n_max}]")]
    OutOfRange { x: u64, n_max: u64 },

    #[error("empty range: lo = {lo} > hi = {hi}")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("{path}:{line}: {reason}")]
    ZeroTableParse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}: {source}")]
    DataFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("zero table reaches gamma = {max_gamma} but the request needs height {requested}")]
    Coverage { requested: f64, max_gamma: f64 },

    #[error("bad cache file: {reason}")]
    CacheFormat { reason: String },

    #[error("{what}")]
    Domain { what: String },

    #[error("no sign change on [{lo}, {hi}]; cannot bracket the critical point")]
    Bracket { lo: f64, hi: f64 },

    #[error("invalid parameter: {what}")]
    Param { what: String },

    #[error("gamma pole at s = {re}+{im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("quadrature order M = {m} must exceed twice the series cut {n_cut} to avoid aliasing")]
    Aliasing { m: usize, n_cut: u64 },

    #[error("envelope vanishes at N = {at}; constant fit is degenerate")]
    DegenerateEnvelope { at: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub fn param(what: impl Into<String>) -> Self {
        Error::Param { what: what.into() }
    }
}
