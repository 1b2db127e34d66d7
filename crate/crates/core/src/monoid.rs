//! Closure of a generator set into a finite transformation monoid.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ratio::Rat;
use crate::transform::{GeneratorSet, Transformation};
use num_traits::Zero;
use std::collections::HashMap;

pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// A finite transformation monoid with its Cayley graphs.
///
/// Elements are indexed in discovery order of a breadth-first closure from
/// the identity: witness words are explored by length, then by generator
/// order, so element 0 is the identity and the indexing is deterministic
/// for a fixed generator listing.
pub struct FiniteMonoid {
    pub gens: GeneratorSet,
    pub elements: Vec<Transformation>,
    /// Shortest witness word (generator indices) per element; the word
    /// evaluates right-to-left, i.e. element = g[w0] * g[w1] * ... * g[wk].
    pub witness: Vec<Vec<usize>>,
    /// right_cayley[m][g] = index of m * g (apply generator g first, then m).
    pub right_cayley: Vec<Vec<usize>>,
    /// left_cayley[m][g] = index of g * m.
    pub left_cayley: Vec<Vec<usize>>,
    /// Element index of each generator.
    pub generator_elt: Vec<usize>,
    index: HashMap<Transformation, usize>,
}

impl FiniteMonoid {
    pub fn close(gens: GeneratorSet, cap: usize) -> Result<Self> {
        let n = gens.states.size();
        let ident = Transformation::identity(n);
        let mut elements = vec![ident.clone()];
        let mut witness: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(ident, 0usize);
        let mut right_cayley: Vec<Vec<usize>> = Vec::new();

        let mut next = 0usize;
        while next < elements.len() {
            let mut row = Vec::with_capacity(gens.maps.len());
            for (gi, g) in gens.maps.iter().enumerate() {
                let product = elements[next].compose(g);
                let id = match index.get(&product) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        index.insert(product.clone(), id);
                        elements.push(product);
                        let mut w = witness[next].clone();
                        w.push(gi);
                        witness.push(w);
                        id
                    }
                };
                row.push(id);
            }
            right_cayley.push(row);
            next += 1;
        }

        let left_cayley = elements
            .iter()
            .map(|m| {
                gens.maps
                    .iter()
                    .map(|g| index[&g.compose(m)])
                    .collect()
            })
            .collect();
        let generator_elt = gens.maps.iter().map(|g| index[g]).collect();

        Ok(FiniteMonoid {
            gens,
            elements,
            witness,
            right_cayley,
            left_cayley,
            generator_elt,
            index,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element_index(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Product of two elements by index, via the right Cayley graph.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let mut x = a;
        for &g in &self.witness[b] {
            x = self.right_cayley[x][g];
        }
        x
    }

    /// Evaluates a word of generator indices (applied right-to-left).
    pub fn eval_word(&self, word: &[usize]) -> usize {
        let mut x = 0;
        for &g in word {
            x = self.right_cayley[x][g];
        }
        x
    }

    pub fn is_idempotent(&self, m: usize) -> bool {
        self.product(m, m) == m
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&m| self.is_idempotent(m)).collect()
    }

    /// The unique idempotent power m^omega of an element.
    pub fn idempotent_power(&self, m: usize) -> usize {
        let mut x = m;
        for _ in 0..=self.size() {
            if self.is_idempotent(x) {
                return x;
            }
            x = self.product(x, m);
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }

    /// Indices of elements that act as constant maps on the state space.
    pub fn constant_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&m| self.elements[m].is_constant())
            .collect()
    }

    /// The left ideal M*e of an element, as a sorted set of indices.
    pub fn left_ideal(&self, e: usize) -> Vec<usize> {
        let mut ideal: Vec<usize> = (0..self.size()).map(|x| self.product(x, e)).collect();
        ideal.sort_unstable();
        ideal.dedup();
        ideal
    }

    /// Renders an element's witness word with generator names (identity as "1").
    pub fn word_name(&self, m: usize) -> String {
        if self.witness[m].is_empty() {
            "1".to_string()
        } else {
            self.witness[m]
                .iter()
                .map(|&g| self.gens.names[g].as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Decomposes a column-stochastic matrix into a convex combination of
/// column-monomial 0/1 matrices (each column has a single 1), i.e. of
/// transformations. Returns pairs (weight, transformation).
///
/// Greedy peeling: each round picks, per column, the first positive entry
/// and subtracts the minimum of the chosen entries times the corresponding
/// transformation; at least one entry is zeroed per round, so at most
/// rows*cols rounds occur.
pub fn decompose_column_stochastic(t: &Matrix) -> Result<Vec<(Rat, Transformation)>> {
    use num_traits::One;
    if t.rows != t.cols {
        return Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {}x{}",
            t.rows, t.cols
        )));
    }
    let n = t.rows;
    for c in 0..n {
        let sum: Rat = (0..n).map(|r| t.at(r, c).clone()).sum();
        if sum != Rat::one() {
            return Err(Error::NotStochastic(format!(
                "column {c} sums to {sum}, expected 1"
            )));
        }
        if (0..n).any(|r| t.at(r, c) < &Rat::zero()) {
            return Err(Error::NotStochastic(format!("column {c} has a negative entry")));
        }
    }
    let mut rem = t.clone();
    let mut out: Vec<(Rat, Transformation)> = Vec::new();
    loop {
        let mut targets = Vec::with_capacity(n);
        let mut weight: Option<Rat> = None;
        let mut done = true;
        for c in 0..n {
            let Some(r) = (0..n).find(|&r| !rem.at(r, c).is_zero()) else {
                // column fully consumed: all columns drain in lockstep
                targets.clear();
                break;
            };
            done = false;
            targets.push(r);
            let v = rem.at(r, c).clone();
            weight = Some(match weight {
                None => v,
                Some(w) => w.min(v),
            });
        }
        if done || targets.is_empty() {
            break;
        }
        let w = weight.expect("weight set when targets found");
        for (c, &r) in targets.iter().enumerate() {
            *rem.at_mut(r, c) -= &w;
        }
        out.push((
            w,
            Transformation {
                // column c maps state c to the chosen row
                targets: targets.clone(),
            },
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};
    use crate::transform::StateSpace;

    fn tiny_gens() -> GeneratorSet {
        // constants to 0 and 1 on two states
        GeneratorSet::new(
            StateSpace::new(vec!["a".into(), "b".into()]),
            vec!["x".into(), "y".into()],
            vec![
                Transformation { targets: vec![0, 0] },
                Transformation { targets: vec![1, 1] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn closure_is_deterministic_and_capped() {
        let m = FiniteMonoid::close(tiny_gens(), 100).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.witness[0], Vec::<usize>::new());
        assert_eq!(m.witness[1], vec![0]);
        assert_eq!(m.witness[2], vec![1]);
        assert!(matches!(
            FiniteMonoid::close(tiny_gens(), 2),
            Err(Error::CapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn product_matches_composition() {
        let m = FiniteMonoid::close(tiny_gens(), 100).unwrap();
        for a in 0..m.size() {
            for b in 0..m.size() {
                let direct = m.elements[a].compose(&m.elements[b]);
                assert_eq!(m.product(a, b), m.element_index(&direct).unwrap());
            }
        }
    }

    #[test]
    fn idempotent_power_of_cycle() {
        // 3-cycle on 3 states: omega power is the identity
        let gens = GeneratorSet::new(
            StateSpace::new(vec!["0".into(), "1".into(), "2".into()]),
            vec!["c".into()],
            vec![Transformation { targets: vec![1, 2, 0] }],
        )
        .unwrap();
        let m = FiniteMonoid::close(gens, 100).unwrap();
        let c = m.generator_elt[0];
        assert_eq!(m.idempotent_power(c), 0);
    }

    #[test]
    fn stochastic_decomposition_recombines() {
        let t = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(2, 3)],
        ]);
        let parts = decompose_column_stochastic(&t).unwrap();
        let total: Rat = parts.iter().map(|(w, _)| w.clone()).sum();
        assert_eq!(total, rat_int(1));
        let mut recomposed = Matrix::zero(2, 2);
        for (w, f) in &parts {
            for c in 0..2 {
                *recomposed.at_mut(f.targets[c], c) += w;
            }
        }
        assert_eq!(recomposed, t);
        // not column-stochastic
        let bad = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 3), rat(1, 2)],
        ]);
        assert!(decompose_column_stochastic(&bad).is_err());
    }
}
