use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("root index must be at least 1")]
    ZeroIndex,
    #[error("level must be at least {min}, got {got}")]
    LevelTooSmall { min: usize, got: usize },
    #[error("negative entry {0}")]
    Negative(String),
    #[error("sides do not close: right weight {right}, left weight {left}")]
    SidesDoNotClose { right: String, left: String },
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("diagonal {0} is not active")]
    InactiveDiagonal(String),
    #[error("polytope is not MV: {0}")]
    NotMv(String),
    #[error("datum violates the parity condition: {0}")]
    Parity(String),
    #[error("expected a {expected} datum, got {got}")]
    WrongSystem { expected: String, got: String },
    #[error("character expansion not stabilized at cutoff {0}")]
    NotStabilized(usize),
    #[error("unknown operator {0:?}")]
    UnknownOp(String),
    #[error("geometric lowering stalled at t = {0}")]
    Stalled(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
}

pub type Result<T> = std::result::Result<T, MvError>;
