//! Stationary analysis of induced chains: recurrent-class detection,
//! stationary distribution, average reward, and mean recurrence times.

use nalgebra::{DMatrix, DVector};
use petgraph::graph::DiGraph;

use crate::constants::STATIONARY_TOL;
use crate::mdp::{induced_chain, DeterministicPolicy, InducedChain, TabularMdp};
use crate::{Error, Result};

/// Stationary structure of a unichain induced Markov chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainAnalysis {
    /// Stationary distribution `d` over all states (zero on transient ones).
    pub stationary: Vec<f64>,
    /// Long-run average reward `ρ = ⟨d, r⟩`.
    pub avg_reward: f64,
    /// Mean return time per state, `1/d(s)`; infinite for transient states.
    pub recurrence_time: Vec<f64>,
    /// Sorted members of the single recurrent class.
    pub recurrent_class: Vec<usize>,
}

/// Finds the recurrent classes of the chain's support graph: strongly
/// connected components with no edge leaving them.
fn recurrent_classes(chain: &InducedChain) -> Vec<Vec<usize>> {
    let n = chain.num_states();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n * 4);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for s in 0..n {
        for (j, &p) in chain.row(s).iter().enumerate() {
            if p > 0.0 {
                graph.add_edge(nodes[s], nodes[j], ());
            }
        }
    }
    let sccs = petgraph::algo::tarjan_scc(&graph);
    let mut component_of = vec![0usize; n];
    for (idx, scc) in sccs.iter().enumerate() {
        for node in scc {
            component_of[node.index()] = idx;
        }
    }
    let mut closed = vec![true; sccs.len()];
    for s in 0..n {
        for (j, &p) in chain.row(s).iter().enumerate() {
            if p > 0.0 && component_of[s] != component_of[j] {
                closed[component_of[s]] = false;
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = sccs
        .iter()
        .enumerate()
        .filter(|(idx, _)| closed[*idx])
        .map(|(_, scc)| {
            let mut states: Vec<usize> = scc.iter().map(|n| n.index()).collect();
            states.sort_unstable();
            states
        })
        .collect();
    classes.sort();
    classes
}

/// Solves `d P = d, Σd = 1` restricted to the recurrent class by stacking the
/// normalization row onto `Pᵀ − I` and taking the least-squares solution.
fn stationary_on_class(chain: &InducedChain, class: &[usize]) -> Result<Vec<f64>> {
    let m = class.len();
    if m == 1 {
        return Ok(vec![1.0]);
    }
    let mut a = DMatrix::<f64>::zeros(m + 1, m);
    for (col, &from) in class.iter().enumerate() {
        let row_slice = chain.row(from);
        for (row, &to) in class.iter().enumerate() {
            a[(row, col)] = row_slice[to];
        }
        a[(col, col)] -= 1.0;
    }
    for col in 0..m {
        a[(m, col)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(m + 1);
    b[m] = 1.0;
    let svd = a.svd(true, true);
    let d = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Contract(format!("stationary solve failed: {e}")))?;
    Ok(d.iter().copied().collect())
}

/// Analyzes an induced chain: verifies the unichain condition, then returns
/// the stationary distribution, average reward, and recurrence times.
///
/// Two disjoint recurrent classes violate the unichain assumption and are
/// reported as [`Error::Multichain`] naming both classes.
pub fn analyze_chain(chain: &InducedChain) -> Result<ChainAnalysis> {
    let n = chain.num_states();
    for s in 0..n {
        let sum: f64 = chain.row(s).iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidMdp(format!(
                "induced row {s} sums to {sum}, not stochastic"
            )));
        }
    }
    let classes = recurrent_classes(chain);
    if classes.len() > 1 {
        return Err(Error::Multichain {
            first: classes[0].clone(),
            second: classes[1].clone(),
            context: String::new(),
        });
    }
    let class = &classes[0];
    let d_class = stationary_on_class(chain, class)?;

    let mut stationary = vec![0.0; n];
    for (&s, &d) in class.iter().zip(&d_class) {
        // Clamp least-squares noise; genuine stationary mass is positive on
        // a recurrent class.
        stationary[s] = d.max(0.0);
    }
    let residual = stationary_residual(chain, &stationary);
    let total: f64 = stationary.iter().sum();
    if residual > STATIONARY_TOL || (total - 1.0).abs() > STATIONARY_TOL {
        return Err(Error::Contract(format!(
            "stationary solution out of tolerance: residual {residual:.3e}, sum {total}"
        )));
    }

    let avg_reward = stationary
        .iter()
        .zip(chain.expected_rewards())
        .map(|(d, r)| d * r)
        .sum();
    let recurrence_time = stationary
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { f64::INFINITY })
        .collect();
    Ok(ChainAnalysis {
        stationary,
        avg_reward,
        recurrence_time,
        recurrent_class: class.clone(),
    })
}

/// `‖dP − d‖∞` for a candidate stationary vector.
pub fn stationary_residual(chain: &InducedChain, d: &[f64]) -> f64 {
    let n = chain.num_states();
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut acc = 0.0;
        for s in 0..n {
            acc += d[s] * chain.prob(s, j);
        }
        worst = worst.max((acc - d[j]).abs());
    }
    worst
}

/// Convenience: analysis of the chain induced by `policy` on `mdp`.
pub fn evaluate_policy(mdp: &TabularMdp, policy: &DeterministicPolicy) -> Result<ChainAnalysis> {
    analyze_chain(&induced_chain(mdp, policy)?)
}
