//! Tabular-MDP simulation toolkit and benchmark harness for regret
//! minimization with structured policy families.
//!
//! The crate is organized around five pieces:
//!
//! - [`mdp`]: exact representation and analysis of finite tabular MDPs
//!   (validation, induced chains, stationary distributions, average-reward
//!   planning).
//! - [`sim`]: seeded trajectory generation with renewal-episode semantics
//!   (an episode ends on return to the anchor state or after `tau` steps).
//! - [`agents`]: the learning algorithms — pUCB, pThompson, their extended
//!   variants that also fit an empirical model, PSRL, warm-started PSRL,
//!   and baseline agents.
//! - [`envs`]: the two benchmark environments (slow-server queue and
//!   machine replacement) together with their threshold policy families.
//! - [`harness`]: experiment orchestration — seeds, regret curves,
//!   aggregation across Monte Carlo runs, CSV/JSON export.

pub mod agents;
pub mod constants;
pub mod envs;
mod error;
pub mod harness;
pub mod mdp;
pub mod sim;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
