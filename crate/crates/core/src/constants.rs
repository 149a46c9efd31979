//! Default tolerances and parameters, kept in one place.

/// Tolerance for transition rows summing to one.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// Tolerance on stationary-distribution residuals (`‖dP − d‖∞` and `Σd − 1`).
pub const STATIONARY_TOL: f64 = 1e-10;

/// Tolerance for the Kac identity `recurrence_time(s) · d(s) = 1`.
pub const KAC_TOL: f64 = 1e-9;

/// Span-seminorm stopping tolerance for relative value iteration.
pub const PLANNER_TOL: f64 = 1e-8;

/// Iteration cap for relative value iteration.
pub const PLANNER_MAX_ITERS: u64 = 2_000_000;

/// Reference state whose bias is pinned to zero during planning.
pub const PLANNER_REFERENCE_STATE: usize = 0;

/// Self-transition damping used inside value iteration. Mixing each row with
/// the identity removes periodicity without changing stationary
/// distributions, average rewards, or optimal policies.
pub const PLANNER_DAMPING: f64 = 0.5;

/// Hard step cap for a single episode; reaching it means the anchor state is
/// effectively not recurrent under the executing policy.
pub const EPISODE_STEP_CAP: u64 = 1_000_000_000;

/// Default exploration coefficient `beta(t)` for pUCB.
pub const DEFAULT_BETA: f64 = 1.0;

/// Dirichlet prior concentration per permitted successor for PSRL.
pub const DIRICHLET_PRIOR: f64 = 1.0;

/// Optimistic point estimate for rewards of never-observed transitions.
pub const OPTIMISTIC_REWARD: f64 = 1.0;

/// PSRL runs fixed-length episodes of `factor * num_states` rounds.
pub const PSRL_EPISODE_LEN_FACTOR: u64 = 2;

/// Machine-replacement generator defaults: geometric ratio for the shared
/// successor weights and the endpoints of the deterioration ramp.
pub const MR_DEFAULT_GAMMA: f64 = 0.5;
pub const MR_DEFAULT_C_MIN: f64 = 0.05;
pub const MR_DEFAULT_C_MAX: f64 = 0.95;

/// Environment variable that overrides the experiment seed base.
pub const SEED_BASE_ENV_VAR: &str = "STRUCTRL_SEED_BASE";
