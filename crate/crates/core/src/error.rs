use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Laurent helper evaluated at u = 0")]
    ZeroArgument,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("site {site} outside 0..={m}")]
    InvalidSite { site: usize, m: usize },
    #[error("partition {parts:?} violates {relation}")]
    Relation { parts: Vec<usize>, relation: &'static str },
    #[error("near-singular factor {factor}: |value| = {magnitude:e}")]
    Singular { factor: String, magnitude: f64 },
    #[error("solver stopped after {iterations} iterations with gradient norm {grad_norm:e}")]
    NonConvergence { iterations: usize, grad_norm: f64, xi: Vec<f64> },
    #[error("sector ({n},{m}) with {size} states exceeds the configured limits")]
    SectorTooLarge { n: usize, m: usize, size: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
