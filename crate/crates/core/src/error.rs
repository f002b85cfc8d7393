use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "levels are not sorted: level {index} ({value}) is below its predecessor ({previous})"
    )]
    Unsorted {
        index: usize,
        previous: f64,
        value: f64,
    },
    #[error("level {index} is not a finite number")]
    NonFinite { index: usize },
    #[error("{what} needs at least {needed} levels, got {got}")]
    TooShort {
        what: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("zero spacing in the denominator at position {index}")]
    ZeroSpacing { index: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported Dyson index {0} (expected 1, 2 or 4)")]
    UnsupportedBeta(u32),
    #[error("bin edges must be strictly increasing (edge {index})")]
    BadEdges { index: usize },
    #[error("histograms have different bin edges")]
    EdgeMismatch,
    #[error("degenerate fit design: {0}")]
    DegenerateFit(&'static str),
    #[error(
        "quadrature did not converge: estimated error {achieved:e} above tolerance {tolerance:e}"
    )]
    Quadrature { achieved: f64, tolerance: f64 },
    #[error("eigenvalue iteration did not converge for index {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },
    #[error("kramers pairing failed: {0}")]
    Kramers(String),
    #[error("ill-conditioned Nystrom system at t = {half_width} (condition estimate {condition:e}); use a smaller interval or more nodes")]
    IllConditioned { half_width: f64, condition: f64 },
    #[error("outer quadrature not converged at r = {r}: tail fraction {tail:e}; increase t_max")]
    OuterQuadrature { r: f64, tail: f64 },
    #[error("joint density went negative ({value:e}) at t = {half_width}, y = {y}")]
    NegativeDensity { half_width: f64, y: f64, value: f64 },
    #[error("realization {index} (seed {seed}) failed: {source}")]
    Realization {
        index: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}:{line}: cannot parse {content:?}")]
    Parse {
        path: PathBuf,
        line: usize,
        content: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
}
