use thiserror::Error;

use crate::seq::{Action, ActionSeq};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("string {0} is not feasible in the matroid")]
    InfeasibleString(ActionSeq),

    #[error("action {action} is not feasible at {prefix}")]
    InfeasibleAction { prefix: ActionSeq, action: Action },

    #[error("rank exceeded: requested K = {requested} but matroid rank is {rank}")]
    RankExceeded { requested: usize, rank: usize },

    #[error("greedy stalled at step {step}: no feasible action extends the current prefix")]
    GreedyStalled { step: usize },

    #[error("need {needed} distinct actions with defined singleton gains, only {available} exist")]
    InsufficientActions { needed: usize, available: usize },

    #[error("degenerate instance: no positive gain anywhere (S = {s}, R = {r})")]
    Degenerate { s: f64, r: f64 },

    #[error("enumeration needs {required} evaluations, exceeding the cap of {cap}; shrink the instance")]
    CapExceeded { required: u128, cap: u64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid coverage config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
