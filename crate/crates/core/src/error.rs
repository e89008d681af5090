use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid power-law parameters: {0}")]
    InvalidSpec(String),

    #[error("degenerate support: k_min = k_max = {0}")]
    DegenerateSupport(f64),

    #[error("divergent quantity: {0}")]
    Divergent(String),

    #[error("impossible degree sequence: vertex {vertex} has degree {degree} but n = {n}")]
    ImpossibleSequence {
        vertex: usize,
        degree: usize,
        n: usize,
    },

    #[error("every vertex is isolated (degree sum is zero)")]
    AllIsolated,

    #[error("too few observations in range: {found} (need at least {needed})")]
    TooFewPoints { found: usize, needed: usize },

    #[error("likelihood has no interior maximum on alpha in ({lo}, {hi}]")]
    NoMaximum { lo: f64, hi: f64 },

    #[error("observed value {observed} outside attainable range [{lo}, {hi}]")]
    OutOfRange { observed: f64, lo: f64, hi: f64 },

    #[error("moment is not monotone in alpha on the search bracket")]
    NonMonotone,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
