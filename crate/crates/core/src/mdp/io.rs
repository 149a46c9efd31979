//! JSON serialization of [`TabularMdp`].
//!
//! The wire format stores dense probability vectors keyed by `"s,a"` and
//! per-transition rewards keyed by `"s,a,s'"`, with keys in sorted (string)
//! order so repeated serialization is byte-identical:
//!
//! ```json
//! {
//!   "num_states": 2,
//!   "actions": [[0], [0, 1]],
//!   "transitions": {"0,0": [0.0, 1.0], "1,0": [1.0, 0.0], "1,1": [0.5, 0.5]},
//!   "rewards": {"0,0,1": 0.3, "1,0,0": 1.0}
//! }
//! ```

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::mdp::TabularMdp;

impl Serialize for TabularMdp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut transitions: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut rewards: BTreeMap<String, f64> = BTreeMap::new();
        for s in 0..self.num_states() {
            for &a in self.actions(s) {
                if let Some(row) = self.row(s, a) {
                    transitions.insert(
                        format!("{s},{a}"),
                        self.dense_row(s, a).expect("row exists"),
                    );
                    for (&j, &r) in row.support().iter().zip(row.rewards()) {
                        rewards.insert(format!("{s},{a},{j}"), r);
                    }
                }
            }
        }
        let mut out = serializer.serialize_struct("TabularMdp", 4)?;
        out.serialize_field("num_states", &self.num_states())?;
        out.serialize_field("actions", &self.actions)?;
        out.serialize_field("transitions", &transitions)?;
        out.serialize_field("rewards", &rewards)?;
        out.end()
    }
}

#[derive(Deserialize)]
struct WireMdp {
    num_states: usize,
    actions: Vec<Vec<usize>>,
    transitions: BTreeMap<String, Vec<f64>>,
    rewards: BTreeMap<String, f64>,
}

fn parse_key<'de, D: Deserializer<'de>>(key: &str, parts: usize) -> Result<Vec<usize>, D::Error> {
    let fields: Vec<&str> = key.split(',').collect();
    if fields.len() != parts {
        return Err(D::Error::custom(format!(
            "key '{key}' must have {parts} comma-separated indices"
        )));
    }
    fields
        .iter()
        .map(|f| {
            f.trim()
                .parse::<usize>()
                .map_err(|e| D::Error::custom(format!("bad index in key '{key}': {e}")))
        })
        .collect()
}

impl<'de> Deserialize<'de> for TabularMdp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireMdp::deserialize(deserializer)?;
        if wire.actions.len() != wire.num_states {
            return Err(D::Error::custom(format!(
                "actions list covers {} states, num_states is {}",
                wire.actions.len(),
                wire.num_states
            )));
        }
        let mut rewards: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
        for (key, value) in &wire.rewards {
            let idx = parse_key::<D>(key, 3)?;
            rewards.insert((idx[0], idx[1], idx[2]), *value);
        }
        let mut mdp = TabularMdp::new(wire.num_states);
        for (key, dense) in &wire.transitions {
            let idx = parse_key::<D>(key, 2)?;
            let (s, a) = (idx[0], idx[1]);
            if s >= wire.num_states || dense.len() != wire.num_states {
                return Err(D::Error::custom(format!(
                    "transition row '{key}' inconsistent with num_states {}",
                    wire.num_states
                )));
            }
            let entries: Vec<(usize, f64, f64)> = dense
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0.0)
                .map(|(j, &p)| (j, p, rewards.get(&(s, a, j)).copied().unwrap_or(0.0)))
                .collect();
            mdp.set_transition(s, a, &entries);
        }
        // Declared actions without stored rows stay visible to the validator.
        for (s, declared) in wire.actions.iter().enumerate() {
            for &a in declared {
                if !mdp.has_action(s, a) {
                    mdp.actions[s].push(a);
                    mdp.actions[s].sort_unstable();
                    if a >= mdp.action_slots {
                        mdp.grow_slots(a + 1);
                    }
                }
            }
        }
        Ok(mdp)
    }
}
