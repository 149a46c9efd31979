//! Average-reward planning via relative value iteration with a span
//! stopping rule, plus evaluation of explicit policy families.

use crate::constants::{PLANNER_DAMPING, PLANNER_REFERENCE_STATE};
use crate::mdp::analysis::evaluate_policy;
use crate::mdp::{DeterministicPolicy, TabularMdp, TransitionRow};
use crate::{Error, Result};

/// Output of the average-reward planner.
#[derive(Debug, Clone)]
pub struct PlanningResult {
    /// The gain-optimal deterministic policy found.
    pub policy: DeterministicPolicy,
    /// Optimal long-run average reward.
    pub gain: f64,
    /// Relative state values, pinned to zero at the reference state.
    pub bias: Vec<f64>,
    /// Value-iteration sweeps performed.
    pub iterations: u64,
}

struct PlanView<'a> {
    // Per state: (action id, row, expected one-step reward).
    acts: Vec<Vec<(usize, &'a TransitionRow, f64)>>,
}

impl<'a> PlanView<'a> {
    fn build(mdp: &'a TabularMdp) -> Result<Self> {
        let mut acts = Vec::with_capacity(mdp.num_states());
        for s in 0..mdp.num_states() {
            if mdp.actions(s).is_empty() {
                return Err(Error::InvalidMdp(format!("state {s} has no actions")));
            }
            let mut list = Vec::with_capacity(mdp.actions(s).len());
            for &a in mdp.actions(s) {
                let row = mdp
                    .row(s, a)
                    .ok_or_else(|| Error::InvalidMdp(format!("no transition row for ({s},{a})")))?;
                list.push((a, row, row.expected_reward()));
            }
            acts.push(list);
        }
        Ok(PlanView { acts })
    }
}

/// Finds the gain-optimal deterministic policy by relative value iteration.
///
/// Iterates the damped optimality operator (each row mixed with the identity
/// to remove periodicity; stationary distributions and gains are unchanged)
/// until the span of successive value differences drops below `tolerance`.
/// The returned gain is the midpoint of the final difference bracket, which
/// encloses both the optimal gain and the greedy policy's gain.
pub fn average_reward_optimal(
    mdp: &TabularMdp,
    tolerance: f64,
    max_iters: u64,
) -> Result<PlanningResult> {
    average_reward_optimal_warm(mdp, tolerance, max_iters, None)
}

/// [`average_reward_optimal`] with an optional starting bias vector, used to
/// warm-start repeated solves on nearby MDPs.
pub fn average_reward_optimal_warm(
    mdp: &TabularMdp,
    tolerance: f64,
    max_iters: u64,
    warm_bias: Option<&[f64]>,
) -> Result<PlanningResult> {
    let n = mdp.num_states();
    let view = PlanView::build(mdp)?;
    let keep = 1.0 - PLANNER_DAMPING;

    let mut v: Vec<f64> = match warm_bias {
        Some(bias) if bias.len() == n => bias.to_vec(),
        _ => vec![0.0; n],
    };
    let mut v_next = vec![0.0; n];
    let mut iterations = 0u64;
    let mut span = f64::INFINITY;

    while iterations < max_iters {
        iterations += 1;
        let mut diff_min = f64::INFINITY;
        let mut diff_max = f64::NEG_INFINITY;
        for s in 0..n {
            let mut best = f64::NEG_INFINITY;
            for &(_, row, r_sa) in &view.acts[s] {
                let mut acc = 0.0;
                for (&j, &p) in row.support().iter().zip(row.probs()) {
                    acc += p * v[j];
                }
                let q = r_sa + PLANNER_DAMPING * acc + keep * v[s];
                if q > best {
                    best = q;
                }
            }
            v_next[s] = best;
            let diff = best - v[s];
            if diff < diff_min {
                diff_min = diff;
            }
            if diff > diff_max {
                diff_max = diff;
            }
        }
        span = diff_max - diff_min;
        if span < tolerance {
            // The difference bracket [diff_min, diff_max] encloses both the
            // optimal gain and the gain of the policy greedy w.r.t. the
            // pre-update values, so gain and policy agree within the span.
            let gain = 0.5 * (diff_max + diff_min);
            let policy = greedy_policy(&view, &v, keep);
            let shift = v_next[PLANNER_REFERENCE_STATE];
            let bias = v_next.iter().map(|x| x - shift).collect();
            return Ok(PlanningResult {
                policy,
                gain,
                bias,
                iterations,
            });
        }
        let shift = v_next[PLANNER_REFERENCE_STATE];
        for s in 0..n {
            v[s] = v_next[s] - shift;
        }
    }
    Err(Error::PlannerDiverged {
        iterations,
        span,
        tolerance,
    })
}

fn greedy_policy(view: &PlanView<'_>, v: &[f64], keep: f64) -> DeterministicPolicy {
    let mut actions = Vec::with_capacity(view.acts.len());
    for s in 0..view.acts.len() {
        let mut best_action = view.acts[s][0].0;
        let mut best = f64::NEG_INFINITY;
        for &(a, row, r_sa) in &view.acts[s] {
            let mut acc = 0.0;
            for (&j, &p) in row.support().iter().zip(row.probs()) {
                acc += p * v[j];
            }
            let q = r_sa + PLANNER_DAMPING * acc + keep * v[s];
            // Strict improvement keeps the lowest action id on ties.
            if q > best {
                best = q;
                best_action = a;
            }
        }
        actions.push(best_action);
    }
    DeterministicPolicy::new(actions)
}

/// Evaluates every policy in `family` and returns `(argmax index, gain)`,
/// breaking ties toward the lowest index. Multichain failures are annotated
/// with the offending policy's index.
pub fn best_structured_policy(
    mdp: &TabularMdp,
    family: &[DeterministicPolicy],
) -> Result<(usize, f64)> {
    if family.is_empty() {
        return Err(Error::Contract("empty policy family".into()));
    }
    let mut best_idx = 0;
    let mut best_gain = f64::NEG_INFINITY;
    for (idx, policy) in family.iter().enumerate() {
        let analysis = evaluate_policy(mdp, policy).map_err(|e| match e {
            Error::Multichain { first, second, .. } => Error::Multichain {
                first,
                second,
                context: format!(" (policy index {idx})"),
            },
            other => other,
        })?;
        if analysis.avg_reward > best_gain {
            best_gain = analysis.avg_reward;
            best_idx = idx;
        }
    }
    Ok((best_idx, best_gain))
}
