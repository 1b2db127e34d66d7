//! Tabulated left actions of a monoid.
//!
//! The walk machinery is generic over the acted-on set: either the natural
//! action on the underlying state space, or the left regular action of the
//! monoid on itself.

use crate::monoid::FiniteMonoid;

pub struct ActionTable {
    pub labels: Vec<String>,
    /// apply[element][state] = image state.
    pub apply: Vec<Vec<usize>>,
}

impl ActionTable {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Natural action on the state space the monoid transforms.
    pub fn natural(m: &FiniteMonoid) -> Self {
        ActionTable {
            labels: m.gens.states.labels.clone(),
            apply: m.elements.iter().map(|t| t.targets.clone()).collect(),
        }
    }

    /// Left regular action: the monoid acting on itself by left
    /// multiplication, apply[m][x] = m * x.
    pub fn left_regular(m: &FiniteMonoid) -> Self {
        let n = m.size();
        ActionTable {
            labels: (0..n).map(|x| m.word_name(x)).collect(),
            apply: (0..n)
                .map(|a| (0..n).map(|b| m.product(a, b)).collect())
                .collect(),
        }
    }

    pub fn fixed_point_count(&self, element: usize) -> usize {
        self.apply[element]
            .iter()
            .enumerate()
            .filter(|(s, &t)| *s == t)
            .count()
    }
}
