use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The total flux integral ∫ s B(s) ds diverges.
    #[error("infinite flux: {0}")]
    InfiniteFlux(String),

    /// A field profile violates its invariants (negative B, bad parameters).
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// Adaptive refinement did not converge.
    #[error("quadrature did not converge: {0}")]
    QuadratureDiverged(String),

    /// A potential value became non-finite at a grid point.
    #[error("discretization error at grid index {index} (r = {radius}): potential = {value}")]
    Discretization {
        index: usize,
        radius: f64,
        value: f64,
    },

    /// A request outside the certified range of the Bessel oracle.
    #[error("oracle range exceeded: {0}")]
    OracleRange(String),

    /// A precondition of a verification routine does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed profile spec string or table file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
