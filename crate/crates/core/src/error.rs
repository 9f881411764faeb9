use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point lies on a domain boundary")]
    Boundary,

    #[error("orbit hits a domain boundary at step {0}")]
    BoundaryHit(usize),

    #[error("cuboid has empty interior")]
    EmptyCuboid,

    #[error("window contains brackets that are not matched inside it")]
    UnmatchedWindow,

    #[error("requested size {requested} exceeds the bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },

    #[error("balanced word: central exponent is zero")]
    BalancedWord,

    #[error("word is not admissible")]
    Inadmissible,

    #[error("formula undefined at the neutral parameter a = 1/(2M)")]
    NeutralParameter,

    #[error("only {found} points above the noise floor, need {needed}")]
    InsufficientSignal { found: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
