//! State spaces, transformations, and generator sets.
//!
//! Convention: the monoid acts on states from the left, and words are
//! processed right-to-left. The product `m * n` of two transformations is
//! the map `s -> m(n(s))`, so appending a letter on the right of a word
//! applies that letter first.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub labels: Vec<String>,
}

impl StateSpace {
    pub fn new(labels: Vec<String>) -> Self {
        StateSpace { labels }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }
}

/// A total map on state indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    pub targets: Vec<usize>,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation {
            targets: (0..n).collect(),
        }
    }

    pub fn apply(&self, s: usize) -> usize {
        self.targets[s]
    }

    /// Monoid product: apply `other` first, then `self`.
    pub fn compose(&self, other: &Transformation) -> Transformation {
        Transformation {
            targets: other.targets.iter().map(|&s| self.targets[s]).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    pub fn is_constant(&self) -> bool {
        self.targets.windows(2).all(|w| w[0] == w[1])
    }

    pub fn fixed_point_count(&self) -> usize {
        self.targets.iter().enumerate().filter(|(s, &t)| *s == t).count()
    }
}

/// Named generating transformations over a common state space.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub states: StateSpace,
    pub names: Vec<String>,
    pub maps: Vec<Transformation>,
    /// Total order on generator indices used by the generalized tree-monoid
    /// check; defaults to the listed order.
    pub tree_order: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    name: String,
    targets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorSetJson {
    states: Vec<String>,
    generators: Vec<GeneratorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_order: Option<Vec<String>>,
}

impl GeneratorSet {
    pub fn new(states: StateSpace, names: Vec<String>, maps: Vec<Transformation>) -> Result<Self> {
        let gs = GeneratorSet {
            states,
            names,
            maps,
            tree_order: None,
        };
        gs.validate()?;
        Ok(gs)
    }

    fn validate(&self) -> Result<()> {
        let n = self.states.size();
        if n == 0 {
            return Err(Error::InvalidInput("empty state space".into()));
        }
        if self.names.len() != self.maps.len() {
            return Err(Error::InvalidInput(
                "generator names and maps differ in length".into(),
            ));
        }
        for (name, map) in self.names.iter().zip(&self.maps) {
            if map.targets.len() != n {
                return Err(Error::InvalidInput(format!(
                    "generator '{name}' has {} targets for {n} states",
                    map.targets.len()
                )));
            }
            if let Some(&t) = map.targets.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidInput(format!(
                    "generator '{name}' maps to out-of-range state {t}"
                )));
            }
        }
        if let Some(order) = &self.tree_order {
            let mut seen = vec![false; self.maps.len()];
            for &i in order {
                if i >= seen.len() || seen[i] {
                    return Err(Error::InvalidInput("tree_order is not a permutation".into()));
                }
                seen[i] = true;
            }
            if !seen.iter().all(|&b| b) {
                return Err(Error::InvalidInput("tree_order is not a permutation".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let parsed: GeneratorSetJson = serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("generator JSON: {e}")))?;
        let names: Vec<String> = parsed.generators.iter().map(|g| g.name.clone()).collect();
        let maps = parsed
            .generators
            .into_iter()
            .map(|g| Transformation { targets: g.targets })
            .collect();
        let tree_order = match parsed.tree_order {
            None => None,
            Some(order_names) => {
                let mut order = Vec::with_capacity(order_names.len());
                for n in &order_names {
                    let i = names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| Error::InvalidInput(format!("tree_order names unknown generator '{n}'")))?;
                    order.push(i);
                }
                Some(order)
            }
        };
        let gs = GeneratorSet {
            states: StateSpace::new(parsed.states),
            names,
            maps,
            tree_order,
        };
        gs.validate()?;
        Ok(gs)
    }

    pub fn to_json(&self) -> String {
        let j = GeneratorSetJson {
            states: self.states.labels.clone(),
            generators: self
                .names
                .iter()
                .zip(&self.maps)
                .map(|(name, map)| GeneratorJson {
                    name: name.clone(),
                    targets: map.targets.clone(),
                })
                .collect(),
            tree_order: self
                .tree_order
                .as_ref()
                .map(|o| o.iter().map(|&i| self.names[i].clone()).collect()),
        };
        serde_json::to_string_pretty(&j).expect("serializing generator set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let f = Transformation { targets: vec![1, 2, 0] };
        let g = Transformation { targets: vec![0, 0, 0] };
        // (f * g)(s) = f(g(s)) = f(0) = 1
        assert_eq!(f.compose(&g).targets, vec![1, 1, 1]);
        assert_eq!(g.compose(&f).targets, vec![0, 0, 0]);
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{
            "states": ["a", "b"],
            "generators": [
                {"name": "x", "targets": [0, 0]},
                {"name": "y", "targets": [1, 1]}
            ],
            "tree_order": ["y", "x"]
        }"#;
        let gs = GeneratorSet::from_json(json).unwrap();
        assert_eq!(gs.tree_order, Some(vec![1, 0]));
        let gs2 = GeneratorSet::from_json(&gs.to_json()).unwrap();
        assert_eq!(gs2.names, gs.names);
        assert_eq!(gs2.maps, gs.maps);
        assert_eq!(gs2.tree_order, gs.tree_order);
    }

    #[test]
    fn rejects_bad_targets() {
        let json = r#"{"states": ["a"], "generators": [{"name": "x", "targets": [3]}]}"#;
        assert!(GeneratorSet::from_json(json).is_err());
    }
}
