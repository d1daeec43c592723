use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a game needs at least 2 players, got {0}")]
    TooFewPlayers(usize),

    #[error("player index {index} out of range for {players} players")]
    PlayerOutOfRange { index: usize, players: usize },

    #[error("enumerating {players} players exceeds the cap of {cap}")]
    EnumerationCap { players: usize, cap: usize },

    #[error("free-riding precondition fails at k={k}: {reason}")]
    FreeRiding { k: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid transition matrix: {0}")]
    InvalidTransitionMatrix(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("edge weights at vertex {vertex}: out-weight {out_weight}, in-weight {in_weight}, pi {pi}")]
    WeightIdentity {
        vertex: usize,
        out_weight: f64,
        in_weight: f64,
        pi: f64,
    },

    #[error("replay script exhausted at step {step} (script length {len})")]
    ReplayExhausted { step: usize, len: usize },

    #[error("no recorded rows at or beyond n={0}")]
    NoRowsPastN(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
