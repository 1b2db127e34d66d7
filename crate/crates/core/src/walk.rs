//! Random-walk analysis: transition matrices, stationary distributions via
//! several independent exact routes, convolution powers, absorption times,
//! and mixing bounds.

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::green::{is_left_regular_band, GreenStructure};
use crate::lattice::IdempotentLattice;
use crate::matrix::Matrix;
use crate::monoid::FiniteMonoid;
use crate::prob::ProbabilityAssignment;
use crate::ratio::{binomial, rat_abs, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

pub const DEFAULT_CHAIN_BUDGET: u64 = 1_000_000;

/// Column-stochastic transition matrix of the walk on the action:
/// T(a, b) = sum of P(m) over m with m.b = a.
pub fn transition_matrix(action: &ActionTable, p: &ProbabilityAssignment) -> Matrix {
    let n = action.size();
    let mut t = Matrix::zero(n, n);
    for &m in p.support() {
        let w = p.prob(m);
        for b in 0..n {
            *t.at_mut(action.apply[m][b], b) += w;
        }
    }
    t
}

/// Row-stochastic matrix of the right walk on the monoid itself:
/// R(a, b) = sum of P(x) over x with a*x = b.
pub fn right_walk_matrix(m: &FiniteMonoid, p: &ProbabilityAssignment) -> Matrix {
    let n = m.size();
    let mut r = Matrix::zero(n, n);
    for a in 0..n {
        for &x in p.support() {
            *r.at_mut(a, m.product(a, x)) += p.prob(x);
        }
    }
    r
}

/// Distribution of the right walk after n steps, started at the identity.
pub fn right_walk_distribution(m: &FiniteMonoid, p: &ProbabilityAssignment, n: usize) -> Vec<Rat> {
    let size = m.size();
    let mut dist = vec![Rat::zero(); size];
    dist[0] = Rat::one();
    for _ in 0..n {
        let mut next = vec![Rat::zero(); size];
        for a in 0..size {
            if dist[a].is_zero() {
                continue;
            }
            for &x in p.support() {
                let b = m.product(a, x);
                next[b] += &dist[a] * p.prob(x);
            }
        }
        dist = next;
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErgodicityVerdict {
    Ergodic,
    /// The support does not act transitively on the states.
    NotTransitive,
    /// Transitive and aperiodic, but no constant map in the generated
    /// submonoid; ergodicity is not certified by the criterion used here.
    NoConstant,
    /// The reachability digraph is periodic.
    Periodic { period: u64 },
}

/// Ergodicity certificate: the walk is ergodic if the support closure acts
/// transitively and contains a constant map.
pub fn ergodicity_check(
    m: &FiniteMonoid,
    action: &ActionTable,
    p: &ProbabilityAssignment,
) -> ErgodicityVerdict {
    let n = action.size();
    // digraph of one-step moves b -> a with positive probability
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..n {
        let mut targets: Vec<usize> = p.support().iter().map(|&x| action.apply[x][b]).collect();
        targets.sort_unstable();
        targets.dedup();
        adj[b] = targets;
    }
    let reach_from = |start: usize| -> Vec<bool> {
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        seen
    };
    let strongly_connected = (0..n).all(|s| reach_from(s).iter().all(|&b| b));
    if !strongly_connected {
        return ErgodicityVerdict::NotTransitive;
    }
    let closure = p.support_closure(m);
    let has_constant = closure
        .iter()
        .any(|&x| action.apply[x].windows(2).all(|w| w[0] == w[1]));
    if has_constant {
        return ErgodicityVerdict::Ergodic;
    }
    // period: gcd over edges of (level[u] + 1 - level[v]) for a BFS tree
    let mut level = vec![i64::MIN; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut g: i64 = 0;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if level[w] == i64::MIN {
                level[w] = level[v] + 1;
                queue.push_back(w);
            } else {
                let diff = level[v] + 1 - level[w];
                g = num_integer::gcd(g, diff.abs());
            }
        }
    }
    if g > 1 {
        ErgodicityVerdict::Periodic { period: g as u64 }
    } else {
        ErgodicityVerdict::NoConstant
    }
}

/// Exact stationary distribution by linear algebra: the normalized null
/// space of T - I. Requires an ergodicity certificate.
pub fn stationary_exact(
    m: &FiniteMonoid,
    action: &ActionTable,
    p: &ProbabilityAssignment,
) -> Result<Vec<Rat>> {
    match ergodicity_check(m, action, p) {
        ErgodicityVerdict::Ergodic => {}
        verdict => {
            return Err(Error::NotErgodic(format!("{verdict:?}")));
        }
    }
    let t = transition_matrix(action, p);
    let n = t.rows;
    let sys = t.sub(&Matrix::identity(n));
    let basis = sys.null_space();
    if basis.len() != 1 {
        return Err(Error::NotErgodic(format!(
            "stationary space has dimension {}",
            basis.len()
        )));
    }
    let v = &basis[0];
    let total: Rat = v.iter().sum();
    if total.is_zero() {
        return Err(Error::NotErgodic("degenerate stationary vector".into()));
    }
    Ok(v.iter().map(|x| x / &total).collect())
}

/// Shared context for the chain-based exact formulas.
pub struct WalkContext<'a> {
    pub monoid: &'a FiniteMonoid,
    pub green: &'a GreenStructure,
    pub lattice: &'a IdempotentLattice,
    pub p: &'a ProbabilityAssignment,
    /// Eigenvalue per lattice node.
    pub node_lambda: Vec<Rat>,
    /// For each element, the strict one-step successors (t, weight) of the
    /// right walk, t != sigma with positive total weight.
    succ: Vec<Vec<(usize, Rat)>>,
    in_minimal_ideal: Vec<bool>,
}

impl<'a> WalkContext<'a> {
    pub fn new(
        monoid: &'a FiniteMonoid,
        green: &'a GreenStructure,
        lattice: &'a IdempotentLattice,
        p: &'a ProbabilityAssignment,
    ) -> Result<Self> {
        p.require_adapted(monoid, green)?;
        let node_lambda: Vec<Rat> = (0..lattice.len())
            .map(|x| lattice.eigenvalue(x, p))
            .collect();
        let n = monoid.size();
        let mut succ = Vec::with_capacity(n);
        for a in 0..n {
            let mut acc: HashMap<usize, Rat> = HashMap::new();
            for &x in p.support() {
                let b = monoid.product(a, x);
                if b != a {
                    *acc.entry(b).or_insert_with(Rat::zero) += p.prob(x);
                }
            }
            let mut row: Vec<(usize, Rat)> = acc.into_iter().collect();
            row.sort_by_key(|(t, _)| *t);
            succ.push(row);
        }
        let mut in_minimal_ideal = vec![false; n];
        for &v in &green.minimal_ideal {
            in_minimal_ideal[v] = true;
        }
        Ok(WalkContext {
            monoid,
            green,
            lattice,
            p,
            node_lambda,
            succ,
            in_minimal_ideal,
        })
    }

    fn descent_lambda(&self, element: usize) -> &Rat {
        &self.node_lambda[self.lattice.descent_of[element]]
    }

    fn one_minus_descent_lambda(&self, element: usize) -> Result<Rat> {
        let l = self.descent_lambda(element);
        let d = Rat::one() - l;
        if d.is_zero() {
            return Err(Error::Precondition(format!(
                "descent eigenvalue 1 at non-absorbed element {}",
                self.monoid.word_name(element)
            )));
        }
        Ok(d)
    }

    pub fn is_absorbed(&self, element: usize) -> bool {
        self.in_minimal_ideal[element]
    }
}

fn spend(budget: &mut u64) -> Result<()> {
    if *budget == 0 {
        return Err(Error::BudgetExceeded {
            budget: 0,
            unit: "chains",
        });
    }
    *budget -= 1;
    Ok(())
}

/// Stationary distribution of the walk via the sum over strictly decreasing
/// chains from the identity into the minimal ideal:
/// pi(m) = sum over chains 1 = s_0 > ... > s_q = m of
///         prod_i T(s_{i-1}, s_i) / (1 - lambda_{d(s_{i-1})}).
/// Returns a vector over all elements, supported on the minimal ideal.
pub fn stationary_chain_formula(ctx: &WalkContext, budget: u64) -> Result<Vec<Rat>> {
    let mut out = vec![Rat::zero(); ctx.monoid.size()];
    let mut remaining = budget;
    fn dfs(
        ctx: &WalkContext,
        sigma: usize,
        value: Rat,
        out: &mut [Rat],
        remaining: &mut u64,
    ) -> Result<()> {
        spend(remaining)?;
        if ctx.is_absorbed(sigma) {
            out[sigma] += value;
            return Ok(());
        }
        let denom = ctx.one_minus_descent_lambda(sigma)?;
        for (t, w) in &ctx.succ[sigma] {
            dfs(ctx, *t, &value * w / &denom, out, remaining)?;
        }
        Ok(())
    }
    dfs(ctx, 0, Rat::one(), &mut out, &mut remaining)?;
    Ok(out)
}

/// Stationary distribution via reduced words: sum over words in the support
/// whose prefixes strictly decrease in the R-order,
/// pi(m) = sum over such words for m of prod_i P(w_i) / (1 - lambda_{d(prefix before w_i)}).
pub fn stationary_reduced_words(ctx: &WalkContext, budget: u64) -> Result<Vec<Rat>> {
    let mut out = vec![Rat::zero(); ctx.monoid.size()];
    let mut remaining = budget;
    fn dfs(
        ctx: &WalkContext,
        sigma: usize,
        value: Rat,
        out: &mut [Rat],
        remaining: &mut u64,
    ) -> Result<()> {
        spend(remaining)?;
        if ctx.is_absorbed(sigma) {
            out[sigma] += value;
            return Ok(());
        }
        let denom = ctx.one_minus_descent_lambda(sigma)?;
        for &x in ctx.p.support() {
            let t = ctx.monoid.product(sigma, x);
            if t != sigma {
                dfs(ctx, t, &value * ctx.p.prob(x) / &denom, out, remaining)?;
            }
        }
        Ok(())
    }
    dfs(ctx, 0, Rat::one(), &mut out, &mut remaining)?;
    Ok(out)
}

/// Stationary distribution via the single-product formula available for
/// Karnofsky-Rhodes monoids: each minimal-ideal element has a unique
/// reduced word (its breadth-first witness), and
/// pi(m) = prod_i P(w_i) / (1 - lambda_{d(prefix before w_i)}).
///
/// Requires P supported on the generators.
pub fn stationary_kr_product(ctx: &WalkContext) -> Result<Vec<Rat>> {
    let m = ctx.monoid;
    let (is_kr, witness) = crate::green::is_karnofsky_rhodes(m);
    if !is_kr {
        return Err(Error::NotKarnofskyRhodes(
            witness.unwrap_or_else(|| "tree condition fails".into()),
        ));
    }
    let gen_prob: Vec<Rat> = (0..m.gens.maps.len())
        .map(|g| p_of_generator(ctx, g))
        .collect();
    // all support mass must sit on generator images
    let gen_mass: Rat = {
        let mut distinct: Vec<usize> = m.generator_elt.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.iter().map(|&e| ctx.p.prob(e).clone()).sum()
    };
    if gen_mass != Rat::one() {
        return Err(Error::Precondition(
            "Karnofsky-Rhodes product formula needs P supported on the generators".into(),
        ));
    }
    let mut out = vec![Rat::zero(); m.size()];
    for &target in &ctx.green.minimal_ideal {
        let mut value = Rat::one();
        let mut prefix = 0usize;
        for &g in &m.witness[target] {
            let next = m.right_cayley[prefix][g];
            if next == prefix {
                continue; // loop letters do not occur in witness words
            }
            let denom = ctx.one_minus_descent_lambda(prefix)?;
            value = value * &gen_prob[g] / denom;
            prefix = next;
        }
        out[target] = value;
    }
    Ok(out)
}

fn p_of_generator(ctx: &WalkContext, g: usize) -> Rat {
    // weight of the generator's element split evenly is wrong when two
    // generators share an image; the witness word refers to a specific
    // generator, so use the full element weight (identical images yield the
    // same element and witness never mixes them up in a KR tree).
    ctx.p.prob(ctx.monoid.generator_elt[g]).clone()
}

/// Lumped stationary distribution on the acted-on states: project the
/// absorption distribution mu on the minimal ideal through the action,
/// pi(w) = sum of mu(x) over minimal-ideal x fixing w.
pub fn stationary_lumped(
    ctx: &WalkContext,
    action: &ActionTable,
    mu: &[Rat],
) -> Result<Vec<Rat>> {
    if mu.len() != ctx.monoid.size() {
        return Err(Error::DimensionMismatch(format!(
            "mu has {} entries for {} elements",
            mu.len(),
            ctx.monoid.size()
        )));
    }
    let n = action.size();
    let mut out = vec![Rat::zero(); n];
    for &x in &ctx.green.minimal_ideal {
        if mu[x].is_zero() {
            continue;
        }
        for w in 0..n {
            if action.apply[x][w] == w {
                out[w] += &mu[x];
            }
        }
    }
    Ok(out)
}

/// Exact absorption distribution on the minimal ideal by linear algebra
/// (independent of the chain formulas): mu(a) = probability that the right
/// walk from the identity is absorbed at a.
pub fn absorption_distribution_exact(ctx: &WalkContext) -> Result<Vec<Rat>> {
    let m = ctx.monoid;
    let n = m.size();
    let r = right_walk_matrix(m, ctx.p);
    let transient: Vec<usize> = (0..n).filter(|&v| !ctx.is_absorbed(v)).collect();
    let tpos: HashMap<usize, usize> = transient.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = transient.len();
    let mut out = vec![Rat::zero(); n];
    if k == 0 {
        out[0] = Rat::one(); // the identity itself is absorbed
        return Ok(out);
    }
    let mut iq = Matrix::identity(k);
    for (i, &v) in transient.iter().enumerate() {
        for (j, &w) in transient.iter().enumerate() {
            *iq.at_mut(i, j) -= r.at(v, w);
        }
    }
    // solve (I - Q)^T y = e_start to get the start row of (I - Q)^{-1}
    let mut e_start = vec![Rat::zero(); k];
    e_start[tpos[&0]] = Rat::one();
    let row = iq.transpose().solve(&e_start)?;
    for &a in &ctx.green.minimal_ideal {
        let mut acc = Rat::zero();
        for (i, &v) in transient.iter().enumerate() {
            let rv = r.at(v, a);
            if !rv.is_zero() {
                acc += &row[i] * rv;
            }
        }
        out[a] = acc;
    }
    Ok(out)
}

/// Complete homogeneous symmetric polynomial h_j of the given values.
fn complete_homogeneous(values: &[Rat], j: usize) -> Rat {
    // h_j over k values via the recurrence
    // h_j(x_1..x_t) = h_j(x_1..x_{t-1}) + x_t * h_{j-1}(x_1..x_t)
    let mut h = vec![Rat::zero(); j + 1];
    h[0] = Rat::one();
    for x in values {
        for d in 1..=j {
            let add = x * &h[d - 1];
            h[d] += add;
        }
    }
    h[j].clone()
}

/// Exact n-step distribution value P^{*n}(target) of the right walk via
/// the chain/simplex expansion:
/// sum over chains 1 = s_0 > ... > s_q = target of
/// P(chain) * h_{n-q}(lambda_{d(s_0)}, ..., lambda_{d(s_q)}).
pub fn pstar_formula(ctx: &WalkContext, target: usize, n: usize, budget: u64) -> Result<Rat> {
    // restrict the DFS to elements that can still reach the target
    let m = ctx.monoid;
    let can_reach: Vec<bool> = (0..m.size())
        .map(|v| ctx.green.r_leq(target, v))
        .collect();
    let mut total = Rat::zero();
    let mut remaining = budget;
    struct Frame {
        sigma: usize,
        weight: Rat,
        lambdas: Vec<Rat>,
    }
    fn dfs(
        ctx: &WalkContext,
        f: Frame,
        target: usize,
        n: usize,
        can_reach: &[bool],
        total: &mut Rat,
        remaining: &mut u64,
    ) -> Result<()> {
        spend(remaining)?;
        let q = f.lambdas.len() - 1;
        if f.sigma == target && q <= n {
            *total += &f.weight * complete_homogeneous(&f.lambdas, n - q);
        }
        if q >= n {
            return Ok(()); // longer chains need negative-degree h, which vanish
        }
        for (t, w) in &ctx.succ[f.sigma] {
            if !can_reach[*t] {
                continue;
            }
            let mut lambdas = f.lambdas.clone();
            lambdas.push(ctx.descent_lambda(*t).clone());
            dfs(
                ctx,
                Frame {
                    sigma: *t,
                    weight: &f.weight * w,
                    lambdas,
                },
                target,
                n,
                can_reach,
                total,
                remaining,
            )?;
        }
        Ok(())
    }
    dfs(
        ctx,
        Frame {
            sigma: 0,
            weight: Rat::one(),
            lambdas: vec![ctx.descent_lambda(0).clone()],
        },
        target,
        n,
        &can_reach,
        &mut total,
        &mut remaining,
    )?;
    Ok(total)
}

/// Left-regular-band bound on distance from stationarity after n steps:
/// -(sum over nodes X above the bottom of lambda_X^n * mu(bottom, X)).
/// For a left regular band this equals P^{*n}(M minus the minimal ideal)
/// exactly.
pub fn lrb_tv_bound(
    m: &FiniteMonoid,
    lattice: &IdempotentLattice,
    p: &ProbabilityAssignment,
    n: usize,
) -> Result<Rat> {
    let (is_lrb, witness) = is_left_regular_band(m);
    if !is_lrb {
        return Err(Error::NotLeftRegularBand(
            witness.unwrap_or_else(|| "band laws fail".into()),
        ));
    }
    let mut acc = Rat::zero();
    for x in 0..lattice.len() {
        if x == lattice.bottom {
            continue;
        }
        if !lattice.leq[lattice.bottom][x] {
            continue;
        }
        let lam = lattice.eigenvalue(x, p);
        let mut pw = Rat::one();
        for _ in 0..n {
            pw *= &lam;
        }
        acc += pw * Rat::new(lattice.moebius[lattice.bottom][x].clone(), BigInt::one());
    }
    Ok(-acc)
}

/// Expected absorption time into the minimal ideal, left-regular-band form:
/// -(sum over X above bottom of mu(bottom, X) / (1 - lambda_X)).
pub fn expected_absorption_lrb(
    m: &FiniteMonoid,
    green: &GreenStructure,
    lattice: &IdempotentLattice,
    p: &ProbabilityAssignment,
) -> Result<Rat> {
    let (is_lrb, witness) = is_left_regular_band(m);
    if !is_lrb {
        return Err(Error::NotLeftRegularBand(
            witness.unwrap_or_else(|| "band laws fail".into()),
        ));
    }
    p.require_adapted(m, green)?;
    let mut acc = Rat::zero();
    for x in 0..lattice.len() {
        if x == lattice.bottom {
            continue;
        }
        let lam = lattice.eigenvalue(x, p);
        let denom = Rat::one() - lam;
        if denom.is_zero() {
            return Err(Error::Precondition(format!(
                "eigenvalue 1 above the bottom at node {x}"
            )));
        }
        acc += Rat::new(lattice.moebius[lattice.bottom][x].clone(), BigInt::one()) / denom;
    }
    Ok(-acc)
}

/// Expected absorption time for general R-trivial walks, via the chain sum
/// over strictly decreasing chains from the identity staying outside the
/// minimal ideal:
/// E[tau] = sum over such chains of P(chain) / prod_i (1 - lambda_{d(s_i)}).
pub fn expected_absorption_general(ctx: &WalkContext, budget: u64) -> Result<Rat> {
    if ctx.is_absorbed(0) {
        return Ok(Rat::zero());
    }
    let mut total = Rat::zero();
    let mut remaining = budget;
    fn dfs(
        ctx: &WalkContext,
        sigma: usize,
        value: Rat,
        total: &mut Rat,
        remaining: &mut u64,
    ) -> Result<()> {
        spend(remaining)?;
        let denom = ctx.one_minus_descent_lambda(sigma)?;
        let here = value / denom;
        *total += &here;
        for (t, w) in &ctx.succ[sigma] {
            if !ctx.is_absorbed(*t) {
                dfs(ctx, *t, &here * w, total, remaining)?;
            }
        }
        Ok(())
    }
    dfs(ctx, 0, Rat::one(), &mut total, &mut remaining)?;
    Ok(total)
}

/// Fundamental-matrix oracle for the expected absorption time:
/// E[tau] = (row of (I-Q)^{-1} at the identity) summed.
pub fn expected_absorption_fundamental(ctx: &WalkContext) -> Result<Rat> {
    let m = ctx.monoid;
    let n = m.size();
    if ctx.is_absorbed(0) {
        return Ok(Rat::zero());
    }
    let r = right_walk_matrix(m, ctx.p);
    let transient: Vec<usize> = (0..n).filter(|&v| !ctx.is_absorbed(v)).collect();
    let k = transient.len();
    let mut iq = Matrix::identity(k);
    for (i, &v) in transient.iter().enumerate() {
        for (j, &w) in transient.iter().enumerate() {
            *iq.at_mut(i, j) -= r.at(v, w);
        }
    }
    let ones = vec![Rat::one(); k];
    let u = iq.solve(&ones)?;
    let start = transient
        .iter()
        .position(|&v| v == 0)
        .expect("identity is transient here");
    Ok(u[start].clone())
}

/// Markov-inequality mixing bound: E[tau] / (n + 1).
pub fn markov_mixing_bound(expected_absorption: &Rat, n: usize) -> Rat {
    expected_absorption / rat_int(n as i64 + 1)
}

/// Simplex mixing bound: the chain sum of `expected_absorption_general`
/// divided by n + 1.
pub fn simplex_mixing_bound(ctx: &WalkContext, n: usize, budget: u64) -> Result<Rat> {
    Ok(expected_absorption_general(ctx, budget)? / rat_int(n as i64 + 1))
}

/// Exact lower binomial tail: probability of fewer than `n_levels`
/// successes in k trials of success probability p.
pub fn binomial_tail(n_levels: usize, p: &Rat, k: u64) -> Rat {
    let q = Rat::one() - p;
    let mut acc = Rat::zero();
    for i in 0..n_levels as u64 {
        if i > k {
            break;
        }
        let mut term = Rat::new(binomial(k, i), BigInt::one());
        for _ in 0..i {
            term *= p;
        }
        for _ in 0..(k - i) {
            term *= &q;
        }
        acc += term;
    }
    acc
}

/// Chernoff-style bound on the statistic "fewer than n successes in k
/// trials": the minimum of the exact binomial tail and
/// exp(-(kp - (n-1))^2 / (2kp)), the latter only when k >= (n-1)/p.
/// When the Chernoff regime does not apply the bound degrades gracefully
/// to the exact tail.
pub struct ChernoffBound {
    pub exact_tail: Rat,
    pub chernoff: Option<f64>,
    pub bound: f64,
}

pub fn chernoff_statistic_bound(n_levels: usize, p: &Rat, k: u64) -> ChernoffBound {
    let exact_tail = binomial_tail(n_levels, p, k);
    let tail_f = crate::ratio::rat_to_f64(&exact_tail);
    let kp = crate::ratio::rat_to_f64(p) * k as f64;
    let threshold = n_levels.saturating_sub(1) as f64;
    if kp >= threshold {
        let chernoff = (-(kp - threshold).powi(2) / (2.0 * kp)).exp();
        ChernoffBound {
            exact_tail,
            chernoff: Some(chernoff),
            bound: tail_f.min(chernoff),
        }
    } else {
        ChernoffBound {
            exact_tail,
            chernoff: None,
            bound: tail_f,
        }
    }
}

/// Exact expected time to collect j_i copies of coupon i when coupon i is
/// drawn with probability p_i, by inclusion-exclusion over the coupons that
/// are still incomplete:
/// E[tau] = sum over nonempty subsets I, signs (-1)^{|I|+1}, of
///   sum over r in prod [0, j_i) of multinomial(r) prod p_i^{r_i}
///     / (sum_{i in I} p_i)^{1 + sum r}.
pub fn coupon_collector_multi(j: &[u64], p: &[Rat]) -> Result<Rat> {
    if j.len() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} quotas for {} coupon probabilities",
            j.len(),
            p.len()
        )));
    }
    let total: Rat = p.iter().sum();
    if total != Rat::one() || p.iter().any(|x| x <= &Rat::zero()) {
        return Err(Error::NotStochastic(
            "coupon probabilities must be positive and sum to 1".into(),
        ));
    }
    let k = j.len();
    if k == 0 || k > 20 {
        return Err(Error::InvalidInput("between 1 and 20 coupon types".into()));
    }
    if j.iter().any(|&q| q == 0) {
        return Err(Error::InvalidInput("coupon quotas must be at least 1".into()));
    }
    let mut e = Rat::zero();
    for mask in 1u32..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let psum: Rat = members.iter().map(|&i| p[i].clone()).sum();
        // iterate r vectors with an odometer
        let mut r: Vec<u64> = vec![0; members.len()];
        let mut subtotal = Rat::zero();
        loop {
            let rsum: u64 = r.iter().sum();
            let mut term = Rat::new(
                crate::ratio::factorial(rsum),
                BigInt::one(),
            );
            for (pos, &i) in members.iter().enumerate() {
                term /= Rat::new(crate::ratio::factorial(r[pos]), BigInt::one());
                for _ in 0..r[pos] {
                    term *= &p[i];
                }
            }
            let mut denom = psum.clone();
            for _ in 0..rsum {
                denom *= &psum;
            }
            subtotal += term / denom;
            // advance odometer
            let mut pos = 0;
            loop {
                if pos == members.len() {
                    break;
                }
                r[pos] += 1;
                if r[pos] < j[members[pos]] {
                    break;
                }
                r[pos] = 0;
                pos += 1;
            }
            if pos == members.len() {
                break;
            }
        }
        if members.len() % 2 == 1 {
            e += subtotal;
        } else {
            e -= subtotal;
        }
    }
    Ok(e)
}

/// Total variation distance between two exact distributions.
pub fn tv_distance(a: &[Rat], b: &[Rat]) -> Result<Rat> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} entries",
            a.len(),
            b.len()
        )));
    }
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += rat_abs(&(x - y));
    }
    Ok(acc / rat_int(2))
}

/// Exact distribution of the state walk after n steps from a point mass.
pub fn state_distribution_after(
    action: &ActionTable,
    p: &ProbabilityAssignment,
    start: usize,
    n: usize,
) -> Vec<Rat> {
    let size = action.size();
    let mut dist = vec![Rat::zero(); size];
    dist[start] = Rat::one();
    for _ in 0..n {
        let mut next = vec![Rat::zero(); size];
        for s in 0..size {
            if dist[s].is_zero() {
                continue;
            }
            for &m in p.support() {
                next[action.apply[m][s]] += &dist[s] * p.prob(m);
            }
        }
        dist = next;
    }
    dist
}

/// Mass of the right walk outside the minimal ideal after n steps.
pub fn mass_outside_minimal_ideal(
    m: &FiniteMonoid,
    green: &GreenStructure,
    p: &ProbabilityAssignment,
    n: usize,
) -> Rat {
    let dist = right_walk_distribution(m, p, n);
    let mut in_ideal = vec![false; m.size()];
    for &v in &green.minimal_ideal {
        in_ideal[v] = true;
    }
    dist.iter()
        .enumerate()
        .filter(|(v, _)| !in_ideal[*v])
        .map(|(_, w)| w.clone())
        .sum()
}

pub fn rat_to_f64_vec(v: &[Rat]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::tsetlin::tsetlin_generators;
    use crate::prob::ProbabilityScheme;
    use crate::ratio::rat;

    fn tsetlin(k: usize) -> (FiniteMonoid, GreenStructure) {
        let m = FiniteMonoid::close(tsetlin_generators(k).unwrap(), 10_000).unwrap();
        let green = GreenStructure::compute(&m);
        (m, green)
    }

    #[test]
    fn two_item_stationary_is_the_move_probability() {
        let (m, green) = tsetlin(2);
        let action = ActionTable::natural(&m);
        let uniform =
            ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Uniform).unwrap();
        assert_eq!(
            stationary_exact(&m, &action, &uniform).unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        // state "ab" has a in front, reached exactly when a was moved last
        let skew = ProbabilityAssignment::on_generators(&m, &[rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(
            stationary_exact(&m, &action, &skew).unwrap(),
            vec![rat(1, 3), rat(2, 3)]
        );
        let _ = green;
    }

    #[test]
    fn stationary_routes_agree_on_the_two_item_library() {
        let (m, green) = tsetlin(2);
        let action = ActionTable::natural(&m);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p = ProbabilityAssignment::on_generators(&m, &[rat(1, 3), rat(2, 3)]).unwrap();
        let ctx = WalkContext::new(&m, &green, &lat, &p).unwrap();
        let chain = stationary_chain_formula(&ctx, DEFAULT_CHAIN_BUDGET).unwrap();
        let words = stationary_reduced_words(&ctx, DEFAULT_CHAIN_BUDGET).unwrap();
        let product = stationary_kr_product(&ctx).unwrap();
        let solved = absorption_distribution_exact(&ctx).unwrap();
        assert_eq!(chain, words);
        assert_eq!(chain, product);
        assert_eq!(chain, solved);
        let lumped = stationary_lumped(&ctx, &action, &chain).unwrap();
        assert_eq!(lumped, stationary_exact(&m, &action, &p).unwrap());
    }

    #[test]
    fn chain_formula_respects_its_budget() {
        let (m, green) = tsetlin(2);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p =
            ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Uniform).unwrap();
        let ctx = WalkContext::new(&m, &green, &lat, &p).unwrap();
        assert!(matches!(
            stationary_chain_formula(&ctx, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn absorption_time_routes_agree() {
        let (m, green) = tsetlin(2);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p =
            ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Uniform).unwrap();
        let ctx = WalkContext::new(&m, &green, &lat, &p).unwrap();
        // both generators are constants, so one step always absorbs
        let general = expected_absorption_general(&ctx, DEFAULT_CHAIN_BUDGET).unwrap();
        assert_eq!(general, rat(1, 1));
        assert_eq!(expected_absorption_fundamental(&ctx).unwrap(), rat(1, 1));
        assert_eq!(
            expected_absorption_lrb(&m, &green, &lat, &p).unwrap(),
            rat(1, 1)
        );
        assert_eq!(markov_mixing_bound(&general, 1), rat(1, 2));
        assert_eq!(
            simplex_mixing_bound(&ctx, 1, DEFAULT_CHAIN_BUDGET).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn pstar_matches_the_iterated_walk() {
        let (m, green) = tsetlin(2);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p = ProbabilityAssignment::on_generators(&m, &[rat(1, 4), rat(3, 4)]).unwrap();
        let ctx = WalkContext::new(&m, &green, &lat, &p).unwrap();
        for n in 0..4 {
            let dist = right_walk_distribution(&m, &p, n);
            for target in 0..m.size() {
                assert_eq!(
                    pstar_formula(&ctx, target, n, DEFAULT_CHAIN_BUDGET).unwrap(),
                    dist[target],
                    "n = {n}, target {}",
                    m.word_name(target)
                );
            }
        }
    }

    #[test]
    fn lrb_bound_equals_mass_outside_the_minimal_ideal() {
        let (m, green) = tsetlin(2);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p =
            ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Uniform).unwrap();
        for n in 0..4 {
            assert_eq!(
                lrb_tv_bound(&m, &lat, &p, n).unwrap(),
                mass_outside_minimal_ideal(&m, &green, &p, n)
            );
        }
    }

    #[test]
    fn ergodicity_verdicts() {
        let (m, _green) = tsetlin(2);
        let action = ActionTable::natural(&m);
        let full =
            ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Uniform).unwrap();
        assert_eq!(ergodicity_check(&m, &action, &full), ErgodicityVerdict::Ergodic);
        let partial = ProbabilityAssignment::on_generators(&m, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(
            ergodicity_check(&m, &action, &partial),
            ErgodicityVerdict::NotTransitive
        );
    }

    #[test]
    fn binomial_tail_and_chernoff() {
        // fewer than 2 heads in 3 fair flips: (1 + 3) / 8
        assert_eq!(binomial_tail(2, &rat(1, 2), 3), rat(1, 2));
        let b = chernoff_statistic_bound(2, &rat(1, 2), 20);
        assert!(b.chernoff.is_some());
        assert!(b.bound <= crate::ratio::rat_to_f64(&b.exact_tail) + 1e-12);
        // below the Chernoff regime the exact tail is reported alone
        let low = chernoff_statistic_bound(5, &rat(1, 10), 10);
        assert!(low.chernoff.is_none());
        assert_eq!(low.bound, crate::ratio::rat_to_f64(&low.exact_tail));
    }

    #[test]
    fn coupon_collector_closed_forms() {
        let third = rat(1, 3);
        let e = coupon_collector_multi(&[1, 1, 1], &[third.clone(), third.clone(), third])
            .unwrap();
        assert_eq!(e, rat(11, 2));
        // two copies of a single certain coupon take exactly two draws
        assert_eq!(coupon_collector_multi(&[2], &[rat(1, 1)]).unwrap(), rat(2, 1));
    }

    #[test]
    fn tv_distance_halves_the_l1_norm() {
        let a = vec![rat(1, 1), rat(0, 1)];
        let b = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(tv_distance(&a, &b).unwrap(), rat(1, 2));
        assert!(tv_distance(&a, &[rat(1, 1)]).is_err());
    }

    #[test]
    fn state_walk_matches_the_transition_matrix() {
        let (m, _green) = tsetlin(3);
        let action = ActionTable::natural(&m);
        let p = ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Powers)
            .unwrap();
        let t = transition_matrix(&action, &p);
        let n = 3;
        let tn = t.pow(n);
        let start = 0;
        let dist = state_distribution_after(&action, &p, start, n);
        for s in 0..action.size() {
            assert_eq!(&dist[s], tn.at(s, start));
        }
    }
}
