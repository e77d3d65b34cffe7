use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid run or mesh configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A kernel moment that does not exist (non-integrable singularity).
    #[error("divergent moment: {0}")]
    DivergentMoment(String),

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Internal inconsistency detected while building matrices.
    #[error("assembly error: {0}")]
    Assembly(String),

    /// The reference quadrature oracle failed to converge.
    #[error("oracle failure: {0}")]
    Oracle(String),

    /// Linear or eigenvalue solver failure.
    #[error("solver error: {0}")]
    Solver(String),

    /// Non-finite value produced where a finite one is required.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A mathematical invariant the library guarantees was violated.
    /// Mapped to exit status 2 by the CLI.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
