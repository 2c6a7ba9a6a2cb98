use thiserror::Error;

/// Errors raised by the reduction library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("norm bound {0} is below 2: no determinant-one matrix has a smaller squared Frobenius norm")]
    BoundTooSmall(f64),

    #[error("element has reduced norm {0}, expected 1")]
    NotAUnit(String),

    #[error("channel is singular (|det H| = {0:e})")]
    SingularChannel(f64),

    #[error("unit search did not terminate within {0} steps")]
    NonTermination(usize),

    #[error("rounding residual {0:e} exceeds tolerance")]
    Precision(f64),

    #[error("basis is rank deficient")]
    RankDeficient,

    #[error("symbol {0} is outside the {1} alphabet")]
    OutOfAlphabet(String, &'static str),

    #[error("unitary element fixes the base point and has no bisector")]
    UnitaryElement,

    #[error("polyhedron is not compact: point ({x}, {y}) on the boundary plane is not covered")]
    NonCompact { x: f64, y: f64 },

    #[error("accepted Monte-Carlo sample touched the sampling box boundary; enlarge the box")]
    BoxViolation,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("need at least {needed} points with >= {min} errors, found {found}")]
    InsufficientErrors { min: u64, needed: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
