//! The landslide sandpile model on an arborescence: source operators drop a
//! grain at a vertex and let it settle at the first vertex below threshold
//! on the way to the root; topple operators resend all grains of a vertex
//! the same way. Grains that find no slot leave the system at the root.

use crate::error::{Error, Result};
use crate::transform::{GeneratorSet, StateSpace, Transformation};

/// A rooted tree oriented toward its root, with one capacity per vertex.
#[derive(Clone, Debug)]
pub struct ArborescenceSpec {
    /// parent[v] is the unique successor of v toward the root; None marks
    /// the root.
    pub parent: Vec<Option<usize>>,
    pub thresholds: Vec<u64>,
}

impl ArborescenceSpec {
    pub fn new(parent: Vec<Option<usize>>, thresholds: Vec<u64>) -> Result<Self> {
        let n = parent.len();
        if n == 0 || thresholds.len() != n {
            return Err(Error::InvalidInput(
                "need one parent entry and one threshold per vertex".into(),
            ));
        }
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(Error::InvalidInput("need exactly one root".into()));
        }
        if thresholds.iter().any(|&t| t == 0 || t > 9) {
            return Err(Error::InvalidInput("thresholds must be in 1..=9".into()));
        }
        // Every vertex must reach the root without cycling.
        for mut v in 0..n {
            let mut steps = 0;
            while let Some(p) = parent[v] {
                if p >= n || steps > n {
                    return Err(Error::InvalidInput(
                        "parent map does not form an arborescence".into(),
                    ));
                }
                v = p;
                steps += 1;
            }
        }
        Ok(ArborescenceSpec { parent, thresholds })
    }

    /// A directed path v_0 <- v_1 <- ... <- v_{k-1} with thresholds per
    /// vertex; vertex 0 is the root.
    pub fn path(thresholds: Vec<u64>) -> Result<Self> {
        let parent = (0..thresholds.len())
            .map(|v| if v == 0 { None } else { Some(v - 1) })
            .collect();
        Self::new(parent, thresholds)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }
}

/// Minimum-id leaf of the sub-arborescence on `active` (a vertex with no
/// active child). `active` must contain at least two vertices.
fn min_leaf(spec: &ArborescenceSpec, active: &[usize]) -> usize {
    *active
        .iter()
        .find(|&&v| !active.iter().any(|&u| spec.parent[u] == Some(v)))
        .expect("a finite tree has a leaf")
}

fn without(active: &[usize], v: usize) -> Vec<usize> {
    active.iter().copied().filter(|&u| u != v).collect()
}

/// The source operator, following the defining recursion: peel the
/// minimum-id leaf and either act there or recurse on the rest.
fn sigma_rec(spec: &ArborescenceSpec, active: &[usize], v: usize, t: &mut [u64]) {
    if active.len() == 1 {
        let r = active[0];
        debug_assert_eq!(r, v);
        if t[r] < spec.thresholds[r] {
            t[r] += 1;
        }
        // At capacity: the grain leaves the system.
        return;
    }
    let leaf = min_leaf(spec, active);
    let rest = without(active, leaf);
    if v == leaf {
        if t[leaf] < spec.thresholds[leaf] {
            t[leaf] += 1;
        } else {
            sigma_rec(spec, &rest, spec.parent[leaf].unwrap(), t);
        }
    } else {
        sigma_rec(spec, &rest, v, t);
    }
}

/// The topple operator: the leaf's grains are resent one by one from its
/// successor onward.
fn tau_rec(spec: &ArborescenceSpec, active: &[usize], v: usize, t: &mut [u64]) {
    if active.len() == 1 {
        let r = active[0];
        debug_assert_eq!(r, v);
        t[r] = 0;
        return;
    }
    let leaf = min_leaf(spec, active);
    let rest = without(active, leaf);
    if v == leaf {
        let grains = t[leaf];
        t[leaf] = 0;
        for _ in 0..grains {
            sigma_rec(spec, &rest, spec.parent[leaf].unwrap(), t);
        }
    } else {
        tau_rec(spec, &rest, v, t);
    }
}

pub fn sandpile_sigma(spec: &ArborescenceSpec, v: usize, config: &[u64]) -> Vec<u64> {
    let active: Vec<usize> = (0..spec.len()).collect();
    let mut t = config.to_vec();
    sigma_rec(spec, &active, v, &mut t);
    t
}

pub fn sandpile_tau(spec: &ArborescenceSpec, v: usize, config: &[u64]) -> Vec<u64> {
    let active: Vec<usize> = (0..spec.len()).collect();
    let mut t = config.to_vec();
    tau_rec(spec, &active, v, &mut t);
    t
}

fn configs(spec: &ArborescenceSpec) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &cap in &spec.thresholds {
        let mut next = Vec::new();
        for prefix in &out {
            for value in 0..=cap {
                let mut c = prefix.clone();
                c.push(value);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Source and topple generators on all configurations.
///
/// Generators are listed with every source operator first (by vertex id)
/// and topple operators by decreasing depth; this listing is a topological
/// sort of the order needed by the tree-monoid check, which requires each
/// topple operator to dominate the operators of its strict descendants and
/// its own source operator.
pub fn sandpile_generators(spec: &ArborescenceSpec) -> Result<GeneratorSet> {
    let states = configs(spec);
    let index = |c: &Vec<u64>| states.iter().position(|s| s == c).unwrap();
    let labels = states
        .iter()
        .map(|c| c.iter().map(|v| v.to_string()).collect::<String>())
        .collect();
    let mut names = Vec::new();
    let mut maps = Vec::new();
    for v in 0..spec.len() {
        names.push(format!("s{v}"));
        maps.push(Transformation {
            targets: states
                .iter()
                .map(|c| index(&sandpile_sigma(spec, v, c)))
                .collect(),
        });
    }
    let mut taus: Vec<usize> = (0..spec.len()).collect();
    taus.sort_by_key(|&v| (std::cmp::Reverse(spec.depth(v)), v));
    for &v in &taus {
        names.push(format!("t{v}"));
        maps.push(Transformation {
            targets: states
                .iter()
                .map(|c| index(&sandpile_tau(spec, v, c)))
                .collect(),
        });
    }
    let mut gens = GeneratorSet::new(StateSpace::new(labels), names, maps)?;
    gens.tree_order = Some((0..gens.maps.len()).collect());
    Ok(gens)
}
