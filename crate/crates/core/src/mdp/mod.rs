//! Finite tabular MDPs: representation, validation, induced Markov chains,
//! stationary analysis, and average-reward planning.

mod analysis;
mod io;
mod planning;

pub use analysis::{analyze_chain, evaluate_policy, ChainAnalysis};
pub use planning::{average_reward_optimal, average_reward_optimal_warm, best_structured_policy, PlanningResult};

use serde::{Deserialize, Serialize};

use crate::constants::ROW_SUM_TOL;
use crate::{Error, Result};

/// One sparse transition row: successor states with their probabilities and
/// the reward collected on each realized transition.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionRow {
    support: Vec<usize>,
    probs: Vec<f64>,
    rewards: Vec<f64>,
}

impl TransitionRow {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    /// Expected one-step reward of this row.
    pub fn expected_reward(&self) -> f64 {
        self.probs
            .iter()
            .zip(&self.rewards)
            .map(|(p, r)| p * r)
            .sum()
    }
}

/// A finite MDP with state-dependent action sets, stored sparsely.
///
/// States are `0..num_states`; action ids are small integers whose meaning is
/// environment-specific. Rows are looked up in O(1) via a dense
/// `state * action_slots + action` table.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularMdp {
    num_states: usize,
    action_slots: usize,
    actions: Vec<Vec<usize>>,
    rows: Vec<Option<TransitionRow>>,
}

impl TabularMdp {
    /// Creates an MDP shell with no actions or transitions yet.
    pub fn new(num_states: usize) -> Self {
        TabularMdp {
            num_states,
            action_slots: 0,
            actions: vec![Vec::new(); num_states],
            rows: Vec::new(),
        }
    }

    /// Registers `action` in `state`'s action set and stores its transition
    /// row. `entries` are `(next_state, probability, reward)` triples;
    /// zero-probability entries are dropped.
    ///
    /// Panics on out-of-range state indices or duplicate successors — those
    /// are construction bugs, while semantic problems (row sums, reward
    /// range) are left to [`validate`].
    pub fn set_transition(&mut self, state: usize, action: usize, entries: &[(usize, f64, f64)]) {
        assert!(state < self.num_states, "state {state} out of range");
        let mut entries: Vec<(usize, f64, f64)> = entries
            .iter()
            .copied()
            .filter(|&(_, p, _)| p != 0.0)
            .collect();
        entries.sort_by_key(|&(j, _, _)| j);
        for pair in entries.windows(2) {
            assert!(
                pair[0].0 != pair[1].0,
                "duplicate successor {} in row ({state},{action})",
                pair[0].0
            );
        }
        let row = TransitionRow {
            support: entries.iter().map(|&(j, _, _)| j).collect(),
            probs: entries.iter().map(|&(_, p, _)| p).collect(),
            rewards: entries.iter().map(|&(_, _, r)| r).collect(),
        };
        assert!(
            row.support.iter().all(|&j| j < self.num_states),
            "successor out of range in row ({state},{action})"
        );
        if action >= self.action_slots {
            self.grow_slots(action + 1);
        }
        if !self.actions[state].contains(&action) {
            self.actions[state].push(action);
            self.actions[state].sort_unstable();
        }
        self.rows[state * self.action_slots + action] = Some(row);
    }

    fn grow_slots(&mut self, new_slots: usize) {
        let mut rows = vec![None; self.num_states * new_slots];
        for s in 0..self.num_states {
            for a in 0..self.action_slots {
                rows[s * new_slots + a] = self.rows[s * self.action_slots + a].take();
            }
        }
        self.action_slots = new_slots;
        self.rows = rows;
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Sorted action ids available in `state`.
    pub fn actions(&self, state: usize) -> &[usize] {
        &self.actions[state]
    }

    pub fn has_action(&self, state: usize, action: usize) -> bool {
        self.actions[state].contains(&action)
    }

    /// The stored transition row for `(state, action)`, if any.
    pub fn row(&self, state: usize, action: usize) -> Option<&TransitionRow> {
        if state >= self.num_states || action >= self.action_slots {
            return None;
        }
        self.rows[state * self.action_slots + action].as_ref()
    }

    fn row_checked(&self, state: usize, action: usize) -> Result<&TransitionRow> {
        if !self.has_action(state, action) {
            return Err(Error::InvalidAction { state, action });
        }
        self.row(state, action)
            .ok_or_else(|| Error::InvalidMdp(format!("no transition row for ({state},{action})")))
    }

    /// Dense probability vector over all states for `(state, action)`.
    pub fn dense_row(&self, state: usize, action: usize) -> Option<Vec<f64>> {
        let row = self.row(state, action)?;
        let mut dense = vec![0.0; self.num_states];
        for (&j, &p) in row.support.iter().zip(&row.probs) {
            dense[j] = p;
        }
        Some(dense)
    }

    /// Reward for the realized transition `(state, action, next)`; zero when
    /// the triple is outside the stored support.
    pub fn reward(&self, state: usize, action: usize, next: usize) -> f64 {
        match self.row(state, action) {
            Some(row) => match row.support.binary_search(&next) {
                Ok(idx) => row.rewards[idx],
                Err(_) => 0.0,
            },
            None => 0.0,
        }
    }

    /// Multiplies every stored reward by `alpha`.
    pub fn scale_rewards(&mut self, alpha: f64) {
        for row in self.rows.iter_mut().flatten() {
            for r in &mut row.rewards {
                *r *= alpha;
            }
        }
    }
}

/// A stationary deterministic policy: one action id per state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterministicPolicy {
    actions: Vec<usize>,
}

impl DeterministicPolicy {
    pub fn new(actions: Vec<usize>) -> Self {
        DeterministicPolicy { actions }
    }

    pub fn action(&self, state: usize) -> usize {
        self.actions[state]
    }

    pub fn num_states(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    /// Checks that every state's chosen action is in its action set.
    pub fn validate_for(&self, mdp: &TabularMdp) -> Result<()> {
        if self.actions.len() != mdp.num_states() {
            return Err(Error::Contract(format!(
                "policy covers {} states, MDP has {}",
                self.actions.len(),
                mdp.num_states()
            )));
        }
        for (state, &action) in self.actions.iter().enumerate() {
            if !mdp.has_action(state, action) {
                return Err(Error::InvalidAction { state, action });
            }
        }
        Ok(())
    }
}

/// One structural violation found by [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    /// Transition probabilities of `(state, action)` do not sum to one.
    RowSum { state: usize, action: usize, sum: f64 },
    /// A negative transition probability.
    NegativeProbability { state: usize, action: usize, next: usize, prob: f64 },
    /// A reward outside `[0, 1]`.
    RewardRange { state: usize, action: usize, next: usize, reward: f64 },
    /// An action is declared but has no transition row.
    MissingTransition { state: usize, action: usize },
    /// A state with an empty action set.
    EmptyActionSet { state: usize },
    /// No other state can reach this one under the union of all actions.
    Unreachable { state: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::RowSum { state, action, sum } => {
                write!(f, "row ({state},{action}) sums to {sum} instead of 1")
            }
            Violation::NegativeProbability { state, action, next, prob } => {
                write!(f, "negative probability {prob} at ({state},{action})->{next}")
            }
            Violation::RewardRange { state, action, next, reward } => {
                write!(f, "reward {reward} at ({state},{action})->{next} outside [0,1]")
            }
            Violation::MissingTransition { state, action } => {
                write!(f, "action {action} of state {state} has no transition row")
            }
            Violation::EmptyActionSet { state } => write!(f, "state {state} has no actions"),
            Violation::Unreachable { state } => {
                write!(f, "state {state} is unreachable from every other state")
            }
        }
    }
}

/// Checks all structural invariants and reports every violation found. Never
/// panics; an empty report means the MDP is well-formed.
pub fn validate(mdp: &TabularMdp) -> Vec<Violation> {
    let mut report = Vec::new();
    let mut has_incoming = vec![false; mdp.num_states()];
    for state in 0..mdp.num_states() {
        if mdp.actions(state).is_empty() {
            report.push(Violation::EmptyActionSet { state });
        }
        for &action in mdp.actions(state) {
            let row = match mdp.row(state, action) {
                Some(row) => row,
                None => {
                    report.push(Violation::MissingTransition { state, action });
                    continue;
                }
            };
            let mut sum = 0.0;
            for ((&next, &prob), &reward) in
                row.support().iter().zip(row.probs()).zip(row.rewards())
            {
                sum += prob;
                if prob < 0.0 {
                    report.push(Violation::NegativeProbability { state, action, next, prob });
                } else if prob > 0.0 && next != state {
                    has_incoming[next] = true;
                }
                if !(0.0..=1.0).contains(&reward) {
                    report.push(Violation::RewardRange { state, action, next, reward });
                }
            }
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                report.push(Violation::RowSum { state, action, sum });
            }
        }
    }
    if mdp.num_states() > 1 {
        for (state, &reached) in has_incoming.iter().enumerate() {
            if !reached {
                report.push(Violation::Unreachable { state });
            }
        }
    }
    report
}

/// The Markov chain induced by fixing a policy: a dense row-major transition
/// matrix and the expected one-step reward per state.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedChain {
    num_states: usize,
    transition: Vec<f64>,
    expected_reward: Vec<f64>,
}

impl InducedChain {
    /// Builds a chain directly from a dense transition matrix and per-state
    /// expected rewards. Rows must be length `num_states` each.
    pub fn from_dense(transition: Vec<Vec<f64>>, expected_reward: Vec<f64>) -> Self {
        let num_states = expected_reward.len();
        assert_eq!(transition.len(), num_states);
        let mut flat = Vec::with_capacity(num_states * num_states);
        for row in &transition {
            assert_eq!(row.len(), num_states);
            flat.extend_from_slice(row);
        }
        InducedChain {
            num_states,
            transition: flat,
            expected_reward,
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.transition[from * self.num_states + to]
    }

    pub fn row(&self, state: usize) -> &[f64] {
        &self.transition[state * self.num_states..(state + 1) * self.num_states]
    }

    /// Expected one-step reward `r(s) = Σ_{s'} P(s,s') R(s,·,s')`.
    pub fn expected_rewards(&self) -> &[f64] {
        &self.expected_reward
    }
}

/// Fixes `policy` in `mdp`, yielding the induced transition matrix and the
/// expected-reward vector.
pub fn induced_chain(mdp: &TabularMdp, policy: &DeterministicPolicy) -> Result<InducedChain> {
    policy.validate_for(mdp)?;
    let n = mdp.num_states();
    let mut transition = vec![0.0; n * n];
    let mut expected_reward = vec![0.0; n];
    for state in 0..n {
        let row = mdp.row_checked(state, policy.action(state))?;
        for ((&next, &prob), &reward) in row.support().iter().zip(row.probs()).zip(row.rewards()) {
            transition[state * n + next] = prob;
            expected_reward[state] += prob * reward;
        }
    }
    Ok(InducedChain {
        num_states: n,
        transition,
        expected_reward,
    })
}
