use thiserror::Error;

/// Errors surfaced by MDP analysis, simulation, agents, and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// The MDP failed a structural precondition (missing rows, bad sizes).
    #[error("invalid MDP: {0}")]
    InvalidMdp(String),

    /// A policy selects an action outside the state's action set.
    #[error("invalid action {action} in state {state}: not in the state's action set")]
    InvalidAction { state: usize, action: usize },

    /// Contract violation between components (bad index, broken bound).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The induced chain has more than one recurrent class, which breaks the
    /// unichain assumption every average-reward quantity relies on.
    #[error("multichain structure: disjoint recurrent classes {first:?} and {second:?}{context}")]
    Multichain {
        first: Vec<usize>,
        second: Vec<usize>,
        context: String,
    },

    /// Relative value iteration did not reach the span tolerance.
    #[error("planner did not converge after {iterations} iterations (span {span:.3e}, tolerance {tolerance:.3e})")]
    PlannerDiverged {
        iterations: u64,
        span: f64,
        tolerance: f64,
    },

    /// An episode exceeded the hard step cap, i.e. the anchor state is not
    /// being revisited under the current policy.
    #[error("episode exceeded the step cap of {cap} without reaching state {s_start}")]
    StepCapExceeded { cap: u64, s_start: usize },

    /// Configuration file or parameter problem.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
