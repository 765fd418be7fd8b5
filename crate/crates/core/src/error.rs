use thiserror::Error;

use crate::board::Edge;

/// Errors raised across the crate.
///
/// Strategy-level failures (`StrategyInfeasible`, `StageBlocked`,
/// `BoxesExhausted`) are recoverable inside the engine: it records them on
/// the outcome and finishes the game with uniform random play for that side.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge {0} is already claimed")]
    EdgeAlreadyClaimed(Edge),

    #[error("no free edge left on the board")]
    NoFreeEdge,

    #[error("strategy {strategy} returned non-free edge {edge}")]
    StrategyViolation { strategy: String, edge: Edge },

    #[error("strategy infeasible: {0}")]
    StrategyInfeasible(String),

    #[error("strategy stage blocked: {0}")]
    StageBlocked(String),

    #[error("every box was destroyed before one could be completed")]
    BoxesExhausted,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("trace incompatible with audit: {0}")]
    TraceIncompatible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
