//! Green's relations, minimal ideals, and structural predicates.

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::transform::GeneratorSet;

/// Iterative Tarjan SCC. Returns (component index per node, components in
/// reverse topological order: edges go from later components to earlier).
fn strongly_connected_components(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    // explicit DFS stack: (node, next-edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        call.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let cid = comps.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp_of[w] = cid;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    (comp_of, comps)
}

/// Green's R and L classes of a finite monoid, with class orders and the
/// minimal ideal.
pub struct GreenStructure {
    pub r_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_class_of: Vec<usize>,
    pub l_classes: Vec<Vec<usize>>,
    /// Elements of the minimal (two-sided) ideal, sorted by index.
    pub minimal_ideal: Vec<usize>,
    /// r_reach[i] = set of R-class ids reachable from R-class i in the right
    /// Cayley graph, including i itself. Class j <= class i iff j in r_reach[i].
    r_reach: Vec<Vec<bool>>,
}

impl GreenStructure {
    pub fn compute(m: &FiniteMonoid) -> Self {
        let n = m.size();
        let k = m.gens.maps.len();
        let right_adj: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..k).map(|g| m.right_cayley[v][g]).collect())
            .collect();
        let left_adj: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..k).map(|g| m.left_cayley[v][g]).collect())
            .collect();
        let (r_class_of, r_classes) = strongly_connected_components(&right_adj);
        let (l_class_of, l_classes) = strongly_connected_components(&left_adj);

        // R-class reachability on the condensation.
        let nc = r_classes.len();
        let mut r_reach = vec![vec![false; nc]; nc];
        // Tarjan emits components in reverse topological order, so process
        // sources last and propagate by dynamic programming.
        for c in 0..nc {
            r_reach[c][c] = true;
            for &v in &r_classes[c] {
                for &w in &right_adj[v] {
                    let cw = r_class_of[w];
                    if cw != c {
                        // cw was emitted before c
                        let (head, tail) = r_reach.split_at_mut(c);
                        let row_cw = &head[cw];
                        let row_c = &mut tail[0];
                        for j in 0..nc {
                            if row_cw[j] {
                                row_c[j] = true;
                            }
                        }
                    }
                }
            }
        }

        // Minimal ideal: unique sink of the two-sided condensation.
        let both_adj: Vec<Vec<usize>> = (0..n)
            .map(|v| right_adj[v].iter().chain(&left_adj[v]).copied().collect())
            .collect();
        let (j_class_of, j_classes) = strongly_connected_components(&both_adj);
        let mut sinks: Vec<usize> = Vec::new();
        for (cid, comp) in j_classes.iter().enumerate() {
            let is_sink = comp
                .iter()
                .all(|&v| both_adj[v].iter().all(|&w| j_class_of[w] == cid));
            if is_sink {
                sinks.push(cid);
            }
        }
        assert_eq!(sinks.len(), 1, "a finite monoid has a unique minimal ideal");
        let minimal_ideal = j_classes[sinks[0]].clone();

        GreenStructure {
            r_class_of,
            r_classes,
            l_class_of,
            l_classes,
            minimal_ideal,
            r_reach,
        }
    }

    /// R-order on elements: a <=_R b iff aM is contained in bM.
    pub fn r_leq(&self, a: usize, b: usize) -> bool {
        self.r_reach[self.r_class_of[b]][self.r_class_of[a]]
    }
}

/// True iff all R-classes are singletons; otherwise a witness pair of
/// distinct R-equivalent elements.
pub fn is_r_trivial(green: &GreenStructure) -> (bool, Option<(usize, usize)>) {
    for class in &green.r_classes {
        if class.len() > 1 {
            return (false, Some((class[0], class[1])));
        }
    }
    (true, None)
}

pub fn require_r_trivial(m: &FiniteMonoid, green: &GreenStructure) -> Result<()> {
    match is_r_trivial(green) {
        (true, _) => Ok(()),
        (false, witness) => {
            let (a, b) = witness.expect("witness accompanies failure");
            Err(Error::NotRTrivial {
                witness: format!(
                    "elements {} and {} generate the same right ideal",
                    m.word_name(a),
                    m.word_name(b)
                ),
            })
        }
    }
}

/// Aperiodicity: s^omega * s = s^omega for every element.
pub fn is_aperiodic(m: &FiniteMonoid) -> bool {
    (0..m.size()).all(|s| {
        let e = m.idempotent_power(s);
        m.product(e, s) == e
    })
}

/// Left regular band check: x*x = x and x*y*x = x*y for all x, y.
pub fn is_left_regular_band(m: &FiniteMonoid) -> (bool, Option<String>) {
    for x in 0..m.size() {
        if !m.is_idempotent(x) {
            return (false, Some(format!("{} is not idempotent", m.word_name(x))));
        }
    }
    for x in 0..m.size() {
        for y in 0..m.size() {
            let xy = m.product(x, y);
            if m.product(xy, x) != xy {
                return (
                    false,
                    Some(format!(
                        "x.y.x != x.y for x = {}, y = {}",
                        m.word_name(x),
                        m.word_name(y)
                    )),
                );
            }
        }
    }
    (true, None)
}

/// Karnofsky-Rhodes property (with respect to the given generators): the
/// right Cayley graph with loop edges removed is a tree rooted at the
/// identity, i.e. every non-identity element has exactly one non-loop
/// in-edge and the identity has none.
pub fn is_karnofsky_rhodes(m: &FiniteMonoid) -> (bool, Option<String>) {
    let mut indeg = vec![0usize; m.size()];
    for v in 0..m.size() {
        for g in 0..m.gens.maps.len() {
            let w = m.right_cayley[v][g];
            if w != v {
                indeg[w] += 1;
            }
        }
    }
    if indeg[0] != 0 {
        return (false, Some("identity has a non-loop in-edge".into()));
    }
    for v in 1..m.size() {
        if indeg[v] != 1 {
            return (
                false,
                Some(format!(
                    "element {} has {} non-loop in-edges",
                    m.word_name(v),
                    indeg[v]
                )),
            );
        }
    }
    (true, None)
}

/// Report of the generalized tree-monoid check on a raw generator set.
#[derive(Debug)]
pub struct TreeMonoidReport {
    pub holds: bool,
    /// Names of the first offending generator pair (or single generator for
    /// the eventual-idempotence condition).
    pub certificate: Option<Vec<String>>,
}

/// Sufficient condition for R-triviality checked on the generators alone:
/// every generator is eventually idempotent (x^(k+1) = x^k for some k), and
/// for each ordered pair x < y either x and y commute, or y is idempotent
/// and y*x*y = y*x. The order is `tree_order` if present, else listing order.
pub fn check_generalized_tree_monoid(gens: &GeneratorSet) -> TreeMonoidReport {
    let order: Vec<usize> = gens
        .tree_order
        .clone()
        .unwrap_or_else(|| (0..gens.maps.len()).collect());
    let n = gens.states.size();
    for &i in &order {
        let x = &gens.maps[i];
        let mut p = x.clone();
        let mut ok = false;
        for _ in 0..=n {
            let q = p.compose(x);
            if q == p {
                ok = true;
                break;
            }
            p = q;
        }
        if !ok {
            return TreeMonoidReport {
                holds: false,
                certificate: Some(vec![gens.names[i].clone()]),
            };
        }
    }
    for (pos, &xi) in order.iter().enumerate() {
        for &yi in &order[pos + 1..] {
            let x = &gens.maps[xi];
            let y = &gens.maps[yi];
            let commute = x.compose(y) == y.compose(x);
            let absorbing = y.is_idempotent() && {
                let yx = y.compose(x);
                yx.compose(y) == yx
            };
            if !commute && !absorbing {
                return TreeMonoidReport {
                    holds: false,
                    certificate: Some(vec![gens.names[xi].clone(), gens.names[yi].clone()]),
                };
            }
        }
    }
    TreeMonoidReport {
        holds: true,
        certificate: None,
    }
}

/// Brute-force R-triviality on raw generators: close the monoid and test
/// mM = m'M implies m = m'. Intended as an oracle for the tree-monoid check.
pub fn is_r_trivial_brute_force(gens: &GeneratorSet, cap: usize) -> Result<bool> {
    let m = FiniteMonoid::close(gens.clone(), cap)?;
    let n = m.size();
    let right_ideal = |a: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).map(|x| m.product(a, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let ideals: Vec<Vec<usize>> = (0..n).map(right_ideal).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            if ideals[a] == ideals[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Helper used in tests and by models: is the minimal ideal a left-zero
/// semigroup (m*t = m for all m in the ideal and all t)?
pub fn minimal_ideal_is_left_zero(m: &FiniteMonoid, green: &GreenStructure) -> bool {
    green
        .minimal_ideal
        .iter()
        .all(|&v| (0..m.gens.maps.len()).all(|g| m.right_cayley[v][g] == v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{GeneratorSet, StateSpace, Transformation};

    fn close(maps: Vec<Vec<usize>>, names: &[&str]) -> FiniteMonoid {
        let n = maps[0].len();
        let gens = GeneratorSet::new(
            StateSpace::new((0..n).map(|i| i.to_string()).collect()),
            names.iter().map(|s| s.to_string()).collect(),
            maps.into_iter().map(|t| Transformation { targets: t }).collect(),
        )
        .unwrap();
        FiniteMonoid::close(gens, 10_000).unwrap()
    }

    #[test]
    fn constants_monoid_structure() {
        // identity plus two constants
        let m = close(vec![vec![0, 0], vec![1, 1]], &["x", "y"]);
        let g = GreenStructure::compute(&m);
        assert!(is_r_trivial(&g).0);
        assert_eq!(g.minimal_ideal, vec![1, 2]);
        assert!(minimal_ideal_is_left_zero(&m, &g));
        assert!(is_aperiodic(&m));
        // x and y are L-equivalent? Mx = {x, y}... left classes:
        // g*x for g in {x,y}: x*x=x? compose: x then x -> x. y*x: apply x
        // then y -> y. So the two constants form one L-class.
        assert_eq!(g.l_class_of[1], g.l_class_of[2]);
        assert_ne!(g.r_class_of[1], g.r_class_of[2]);
    }

    #[test]
    fn cyclic_group_is_not_r_trivial() {
        let m = close(vec![vec![1, 2, 0]], &["c"]);
        let g = GreenStructure::compute(&m);
        assert!(!is_r_trivial(&g).0);
        assert!(!is_aperiodic(&m));
        assert_eq!(g.minimal_ideal.len(), 3);
    }

    #[test]
    fn r_order_is_reachability() {
        let m = close(vec![vec![0, 0], vec![1, 1]], &["x", "y"]);
        let g = GreenStructure::compute(&m);
        // constants below identity
        assert!(g.r_leq(1, 0));
        assert!(!g.r_leq(0, 1));
        assert!(g.r_leq(0, 0));
        // two constants are R-incomparable... each is a right zero under
        // right multiplication, so c*M = {c}: incomparable.
        assert!(!g.r_leq(1, 2));
        assert!(!g.r_leq(2, 1));
    }

    #[test]
    fn tree_monoid_check_on_constants() {
        let gens = GeneratorSet::new(
            StateSpace::new(vec!["0".into(), "1".into()]),
            vec!["x".into(), "y".into()],
            vec![
                Transformation { targets: vec![0, 0] },
                Transformation { targets: vec![1, 1] },
            ],
        )
        .unwrap();
        let rep = check_generalized_tree_monoid(&gens);
        assert!(rep.holds);
        assert!(is_r_trivial_brute_force(&gens, 1000).unwrap());
    }

    #[test]
    fn tree_monoid_check_rejects_permutation_pair() {
        let gens = GeneratorSet::new(
            StateSpace::new(vec!["0".into(), "1".into(), "2".into()]),
            vec!["s".into(), "t".into()],
            vec![
                Transformation { targets: vec![1, 0, 2] },
                Transformation { targets: vec![0, 2, 1] },
            ],
        )
        .unwrap();
        let rep = check_generalized_tree_monoid(&gens);
        assert!(!rep.holds);
        assert!(!is_r_trivial_brute_force(&gens, 1000).unwrap());
    }

    #[test]
    fn karnofsky_rhodes_examples() {
        // closure of two constants: x*y = x (constant to 0)? apply y then x
        // -> 0, so x*y = x: loops only; the tree has edges 1->x, 1->y.
        let m = close(vec![vec![0, 0], vec![1, 1]], &["x", "y"]);
        assert!(is_karnofsky_rhodes(&m).0);
    }
}
