//! The lattice of idempotent-generated principal left ideals of an
//! R-trivial monoid, its Moebius function, and the resulting exact spectrum
//! of transition matrices of monoid random walks.

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::green::{require_r_trivial, GreenStructure};
use crate::matrix::Matrix;
use crate::monoid::FiniteMonoid;
use crate::prob::ProbabilityAssignment;
use crate::ratio::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

pub const DEFAULT_TRACE_BUDGET: usize = 120;

/// Lattice nodes are the distinct left ideals M*e over idempotents e,
/// ordered by inclusion. Nodes are indexed by increasing ideal size, ties
/// broken lexicographically on the element sets, so node 0 is the bottom
/// (the minimal ideal) and the last node is the top (M itself).
pub struct IdempotentLattice {
    /// Sorted element sets, one per node.
    pub node_ideals: Vec<Vec<usize>>,
    /// Smallest idempotent index generating each node's ideal.
    pub node_rep: Vec<usize>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
    /// moebius[y][x] = mu(y, x) for y <= x (zero elsewhere).
    pub moebius: Vec<Vec<BigInt>>,
    /// Node of M * m^omega, per element m.
    pub content_of: Vec<usize>,
    /// Node of the descent map d(m): the minimal ideal of the right
    /// stabilizer of m, as a lattice node.
    pub descent_of: Vec<usize>,
    ideal_index: HashMap<Vec<usize>, usize>,
}

impl IdempotentLattice {
    pub fn build(m: &FiniteMonoid, green: &GreenStructure) -> Result<Self> {
        require_r_trivial(m, green)?;

        let idempotents = m.idempotents();
        let mut ideals: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for &e in &idempotents {
            let ideal = m.left_ideal(e);
            if !seen.contains_key(&ideal) {
                seen.insert(ideal.clone(), 0);
                ideals.push(ideal);
                reps.push(e);
            }
        }
        let mut order: Vec<usize> = (0..ideals.len()).collect();
        order.sort_by(|&a, &b| {
            ideals[a]
                .len()
                .cmp(&ideals[b].len())
                .then_with(|| ideals[a].cmp(&ideals[b]))
        });
        let node_ideals: Vec<Vec<usize>> = order.iter().map(|&i| ideals[i].clone()).collect();
        let node_rep: Vec<usize> = order.iter().map(|&i| reps[i]).collect();
        let n = node_ideals.len();
        let mut ideal_index = HashMap::new();
        for (i, ideal) in node_ideals.iter().enumerate() {
            ideal_index.insert(ideal.clone(), i);
        }

        let subset = |a: &[usize], b: &[usize]| -> bool {
            a.iter().all(|x| b.binary_search(x).is_ok())
        };
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = subset(&node_ideals[i], &node_ideals[j]);
            }
        }
        let bottom = 0;
        let top = n - 1;
        if !(0..n).all(|i| leq[bottom][i] && leq[i][top]) {
            // with R-triviality the minimal ideal is the unique bottom and
            // M = M*1 the top; anything else indicates a broken closure
            return Err(Error::InvalidInput(
                "ideal lattice has no bottom or top".into(),
            ));
        }

        // meet via M(ef)^omega
        let mut meet = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let ef = m.product(node_rep[i], node_rep[j]);
                let f = m.idempotent_power(ef);
                let ideal = m.left_ideal(f);
                let node = *ideal_index
                    .get(&ideal)
                    .expect("(ef)^omega generates an ideal in the lattice");
                meet[i][j] = node;
            }
        }

        // Moebius function by recursion over the partial order.
        let mut moebius = vec![vec![BigInt::zero(); n]; n];
        for y in 0..n {
            moebius[y][y] = BigInt::one();
            // nodes are sorted compatibly with <= (by ideal size), so a
            // simple increasing sweep sees all z in [y, x) before x
            for x in 0..n {
                if x == y || !leq[y][x] {
                    continue;
                }
                let mut acc = BigInt::zero();
                for z in 0..n {
                    if z != x && leq[y][z] && leq[z][x] {
                        acc += &moebius[y][z];
                    }
                }
                moebius[y][x] = -acc;
            }
        }

        // content map: c(m) = node of M * m^omega
        let mut content_cache: HashMap<usize, usize> = HashMap::new();
        let mut content_of = Vec::with_capacity(m.size());
        for x in 0..m.size() {
            let e = m.idempotent_power(x);
            let node = *content_cache.entry(e).or_insert_with(|| {
                *ideal_index
                    .get(&m.left_ideal(e))
                    .expect("idempotent ideal is a node")
            });
            content_of.push(node);
        }

        // descent map: d(m) is the meet of c(e) over idempotent right
        // stabilizers e of m (the meet is attained by an idempotent in the
        // minimal ideal of the stabilizer).
        let mut descent_of = Vec::with_capacity(m.size());
        for x in 0..m.size() {
            let mut acc = top;
            for &e in &idempotents {
                if m.product(x, e) == x {
                    acc = meet[acc][content_of[e]];
                }
            }
            descent_of.push(acc);
        }

        Ok(IdempotentLattice {
            node_ideals,
            node_rep,
            leq,
            meet,
            bottom,
            top,
            moebius,
            content_of,
            descent_of,
            ideal_index,
        })
    }

    pub fn len(&self) -> usize {
        self.node_ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_ideals.is_empty()
    }

    pub fn node_of_ideal(&self, ideal: &[usize]) -> Option<usize> {
        self.ideal_index.get(ideal).copied()
    }

    /// Exact eigenvalue of a node: total probability of elements whose
    /// content lies (weakly) above the node.
    pub fn eigenvalue(&self, node: usize, p: &ProbabilityAssignment) -> Rat {
        let mut acc = Rat::zero();
        for &s in p.support() {
            if self.leq[node][self.content_of[s]] {
                acc += p.prob(s);
            }
        }
        acc
    }

    /// Oracle for the descent map: the minimal ideal of the right
    /// stabilizer of m, found literally (smallest idempotent in the unique
    /// minimal two-sided reachability class of the stabilizer submonoid).
    pub fn descent_via_stabilizer(&self, m: &FiniteMonoid, x: usize) -> usize {
        let stab: Vec<usize> = (0..m.size()).filter(|&t| m.product(x, t) == x).collect();
        let pos: HashMap<usize, usize> = stab.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let k = stab.len();
        // reachability under two-sided multiplication within the stabilizer
        let mut reach = vec![vec![false; k]; k];
        for i in 0..k {
            let mut queue = vec![i];
            reach[i][i] = true;
            while let Some(a) = queue.pop() {
                for b in 0..k {
                    for c in [m.product(stab[a], stab[b]), m.product(stab[b], stab[a])] {
                        let j = pos[&c];
                        if !reach[i][j] {
                            reach[i][j] = true;
                            queue.push(j);
                        }
                    }
                }
            }
        }
        // the minimal two-sided class: elements from which everything
        // reachable reaches back
        let minimal: Vec<usize> = (0..k)
            .filter(|&i| (0..k).all(|j| !reach[i][j] || reach[j][i]))
            .collect();
        let e = minimal
            .iter()
            .map(|&i| stab[i])
            .find(|&t| m.is_idempotent(t))
            .expect("minimal ideal of an aperiodic stabilizer contains an idempotent");
        self.node_of_ideal(&m.left_ideal(e))
            .expect("stabilizer idempotent ideal is a node")
    }

    /// Generator names whose content lies above the node; for Boolean-type
    /// lattices this identifies the node in reporting.
    pub fn generators_above(&self, m: &FiniteMonoid, node: usize) -> Vec<String> {
        m.generator_elt
            .iter()
            .zip(&m.gens.names)
            .filter(|(&e, _)| self.leq[node][self.content_of[e]])
            .map(|(_, name)| name.clone())
            .collect()
    }
}

/// One eigenvalue line of a spectrum: lattice node, exact eigenvalue, and
/// exact multiplicity.
#[derive(Clone, Debug)]
pub struct SpectrumNode {
    pub node: usize,
    pub lambda: Rat,
    pub multiplicity: BigInt,
    /// Fixed points of the node's representative idempotent on the action.
    pub fixed_points: usize,
}

pub struct Spectrum {
    pub nodes: Vec<SpectrumNode>,
    pub omega_size: usize,
}

impl Spectrum {
    /// Distinct eigenvalues with positive total multiplicity, merged across
    /// lattice nodes (a presentation step; node-level data stays intact).
    pub fn merged(&self) -> Vec<(Rat, BigInt)> {
        let mut out: Vec<(Rat, BigInt)> = Vec::new();
        for n in &self.nodes {
            match out.iter_mut().find(|(l, _)| l == &n.lambda) {
                Some((_, m)) => *m += &n.multiplicity,
                None => out.push((n.lambda.clone(), n.multiplicity.clone())),
            }
        }
        out.retain(|(_, m)| !m.is_zero());
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }
}

/// Exact spectrum of the walk transition matrix on the given action:
/// eigenvalue and multiplicity per lattice node.
pub fn spectrum(
    lattice: &IdempotentLattice,
    action: &ActionTable,
    p: &ProbabilityAssignment,
) -> Result<Spectrum> {
    let n = lattice.len();
    let fixed: Vec<usize> = (0..n)
        .map(|x| action.fixed_point_count(lattice.node_rep[x]))
        .collect();
    let mut nodes = Vec::with_capacity(n);
    let mut total = BigInt::zero();
    for x in 0..n {
        let lambda = lattice.eigenvalue(x, p);
        let mut mult = BigInt::zero();
        for y in 0..n {
            if lattice.leq[y][x] {
                mult += BigInt::from(fixed[y]) * &lattice.moebius[y][x];
            }
        }
        total += &mult;
        nodes.push(SpectrumNode {
            node: x,
            lambda,
            multiplicity: mult,
            fixed_points: fixed[x],
        });
    }
    let omega = action.size();
    if total != BigInt::from(omega) {
        return Err(Error::MultiplicityMismatch {
            got: total.to_string(),
            expected: omega,
        });
    }
    if nodes.iter().any(|s| s.multiplicity < BigInt::zero()) {
        let bad = nodes
            .iter()
            .find(|s| s.multiplicity < BigInt::zero())
            .expect("just found one");
        return Err(Error::MultiplicityMismatch {
            got: format!("negative multiplicity {} at node {}", bad.multiplicity, bad.node),
            expected: omega,
        });
    }
    Ok(Spectrum {
        nodes,
        omega_size: omega,
    })
}

/// Verifies a claimed spectrum against the transition matrix by Newton's
/// trace identities: trace(T^k) = sum of mult * lambda^k for k = 0..=n.
/// The power sums of n values for k up to n determine the multiset, so this
/// is a complete certificate.
pub fn verify_spectrum_by_traces(t: &Matrix, spectrum: &Spectrum, budget: usize) -> Result<bool> {
    let n = t.rows;
    if n != spectrum.omega_size {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but spectrum claims {} states",
            t.rows, t.cols, spectrum.omega_size
        )));
    }
    if n > budget {
        return Err(Error::BudgetExceeded {
            budget: budget as u64,
            unit: "trace powers",
        });
    }
    let merged = spectrum.merged();
    let mut powers: Vec<(Rat, Rat)> = merged
        .iter()
        .map(|(l, m)| {
            (
                l.clone(),
                Rat::new(m.clone(), BigInt::one()),
            )
        })
        .collect();
    let mut acc = Matrix::identity(n);
    for _k in 0..=n {
        let claimed: Rat = powers.iter().map(|(_, lm)| lm.clone()).sum();
        if acc.trace() != claimed {
            return Ok(false);
        }
        if _k == n {
            break;
        }
        acc = acc.mul(t);
        for (l, lm) in powers.iter_mut() {
            *lm *= &*l;
        }
    }
    Ok(true)
}

/// Outcome of the sufficient diagonalizability criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalizabilityCriterion {
    Satisfied,
    /// Witness pair (m, m') with m' in mN, m' != m, and equal descent
    /// eigenvalues; the criterion is only sufficient, so this is not a
    /// disproof.
    Inconclusive { witness: (usize, usize) },
}

/// Sufficient criterion: the transition matrix is diagonalizable if for
/// every m and every m' in m * <supp P> with m' != m the descent
/// eigenvalues differ.
pub fn check_diagonalizable_criterion(
    m: &FiniteMonoid,
    lattice: &IdempotentLattice,
    p: &ProbabilityAssignment,
) -> DiagonalizabilityCriterion {
    let node_lambda: Vec<Rat> = (0..lattice.len()).map(|x| lattice.eigenvalue(x, p)).collect();
    let closure = p.support_closure(m);
    for a in 0..m.size() {
        let la = &node_lambda[lattice.descent_of[a]];
        for &t in &closure {
            let b = m.product(a, t);
            if b != a && &node_lambda[lattice.descent_of[b]] == la {
                return DiagonalizabilityCriterion::Inconclusive { witness: (a, b) };
            }
        }
    }
    DiagonalizabilityCriterion::Satisfied
}

/// Exact minimal-polynomial diagonalizability oracle: T is diagonalizable
/// iff the product of (T - lambda I) over the distinct eigenvalues
/// annihilates T.
pub fn verify_diagonalizable_minpoly(t: &Matrix, spectrum: &Spectrum) -> bool {
    let n = t.rows;
    let mut acc = Matrix::identity(n);
    for (lambda, _) in spectrum.merged() {
        let factor = t.sub(&Matrix::identity(n).scale(&lambda));
        acc = acc.mul(&factor);
    }
    acc.is_zero()
}
