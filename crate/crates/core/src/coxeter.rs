//! Finite Coxeter systems of types A, B, D, I2(m) and their direct
//! products, realized as permutation groups, together with the exchange
//! walk on reduced words of the longest element, the 0-Hecke monoid, and
//! the Karnofsky-Rhodes expansion.

use crate::error::{Error, Result};
use crate::ratio::{rat_int, Rat};
use crate::transform::{GeneratorSet, StateSpace, Transformation};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

pub const DEFAULT_GROUP_CAP: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterFactor {
    A(usize),
    B(usize),
    D(usize),
    I2(usize),
}

impl CoxeterFactor {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterFactor::A(n) | CoxeterFactor::B(n) | CoxeterFactor::D(n) => n,
            CoxeterFactor::I2(_) => 2,
        }
    }

    fn points(&self) -> usize {
        match *self {
            CoxeterFactor::A(n) => n + 1,
            CoxeterFactor::B(n) | CoxeterFactor::D(n) => 2 * n,
            CoxeterFactor::I2(m) => 2 * m,
        }
    }

    /// Number of positive roots, which is the length of the longest
    /// element.
    fn longest_length(&self) -> usize {
        match *self {
            CoxeterFactor::A(n) => n * (n + 1) / 2,
            CoxeterFactor::B(n) => n * n,
            CoxeterFactor::D(n) => n * n - n,
            CoxeterFactor::I2(m) => m,
        }
    }

    /// Generator permutations on this factor's points.
    fn generators(&self) -> Vec<Vec<usize>> {
        let p = self.points();
        let ident: Vec<usize> = (0..p).collect();
        let mut gens = Vec::new();
        match *self {
            CoxeterFactor::A(n) => {
                for i in 0..n {
                    let mut g = ident.clone();
                    g.swap(i, i + 1);
                    gens.push(g);
                }
            }
            CoxeterFactor::B(n) => {
                // Point i < n is coordinate i+1, point n+i its negative.
                let mut flip = ident.clone();
                flip.swap(0, n);
                gens.push(flip);
                for i in 1..n {
                    let mut g = ident.clone();
                    g.swap(i - 1, i);
                    g.swap(n + i - 1, n + i);
                    gens.push(g);
                }
            }
            CoxeterFactor::D(n) => {
                // First generator sends coordinate 1 to -2 and 2 to -1.
                let mut rot = ident.clone();
                rot.swap(0, n + 1);
                rot.swap(1, n);
                gens.push(rot);
                for i in 1..n {
                    let mut g = ident.clone();
                    g.swap(i - 1, i);
                    g.swap(n + i - 1, n + i);
                    gens.push(g);
                }
            }
            CoxeterFactor::I2(m) => {
                let p = 2 * m;
                gens.push((0..p).map(|i| (p - i) % p).collect());
                gens.push((0..p).map(|i| (p + 2 - i) % p).collect());
            }
        }
        gens
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CoxeterFactor::A(n) => n >= 1,
            CoxeterFactor::B(n) => n >= 2,
            CoxeterFactor::D(n) => n >= 2,
            CoxeterFactor::I2(m) => m >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!("{self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSpec {
    pub factors: Vec<CoxeterFactor>,
}

impl CoxeterSpec {
    pub fn new(factors: Vec<CoxeterFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("empty Coxeter spec".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(CoxeterSpec { factors })
    }

    /// Parses strings like "A2", "B3", "I2(5)", "A2xA1", "D4xI2(6)".
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split(['x', 'X']) {
            let part = part.trim();
            let factor = if let Some(rest) = part.strip_prefix("I2(") {
                let m: usize = rest
                    .strip_suffix(')')
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::UnsupportedType(part.to_string()))?;
                CoxeterFactor::I2(m)
            } else {
                let (kind, n) = part.split_at(1);
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::UnsupportedType(part.to_string()))?;
                match kind {
                    "A" | "a" => CoxeterFactor::A(n),
                    "B" | "b" => CoxeterFactor::B(n),
                    "D" | "d" => CoxeterFactor::D(n),
                    _ => return Err(Error::UnsupportedType(part.to_string())),
                }
            };
            factors.push(factor);
        }
        CoxeterSpec::new(factors)
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    pub fn longest_length(&self) -> usize {
        self.factors.iter().map(|f| f.longest_length()).sum()
    }
}

/// A finite Coxeter group enumerated in its permutation realization, with
/// lengths, a right multiplication table, descent sets, and the longest
/// element.
pub struct CoxeterSystem {
    pub spec: CoxeterSpec,
    pub gen_names: Vec<String>,
    pub elements: Vec<Vec<usize>>,
    pub length: Vec<usize>,
    /// right[w][s] = index of w * s.
    pub right: Vec<Vec<usize>>,
    /// Right descent sets: generators s with l(ws) < l(w).
    pub descents: Vec<Vec<usize>>,
    /// Length-lexicographically first reduced word per element.
    pub witness: Vec<Vec<usize>>,
    pub w0: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl CoxeterSystem {
    pub fn build(spec: CoxeterSpec, cap: usize) -> Result<Self> {
        let rank = spec.rank();
        let total_points: usize = spec.factors.iter().map(|f| f.points()).sum();
        // Embed each factor's generators into the disjoint union of points.
        let mut gens: Vec<Vec<usize>> = Vec::with_capacity(rank);
        let mut offset = 0;
        for f in &spec.factors {
            for g in f.generators() {
                let mut full: Vec<usize> = (0..total_points).collect();
                for (i, &t) in g.iter().enumerate() {
                    full[offset + i] = offset + t;
                }
                gens.push(full);
            }
            offset += f.points();
        }
        let gen_names: Vec<String> = (1..=rank).map(|i| format!("s{i}")).collect();

        let identity: Vec<usize> = (0..total_points).collect();
        let mut elements = vec![identity.clone()];
        let mut length = vec![0usize];
        let mut witness: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(rank);
            for (s, g) in gens.iter().enumerate() {
                // w * s applies s first: (w s)(p) = w(s(p)).
                let w = &elements[head];
                let prod: Vec<usize> = g.iter().map(|&p| w[p]).collect();
                let idx = match index.get(&prod) {
                    Some(&idx) => idx,
                    None => {
                        let idx = elements.len();
                        if idx >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        index.insert(prod.clone(), idx);
                        elements.push(prod);
                        length.push(length[head] + 1);
                        let mut word = witness[head].clone();
                        word.push(s);
                        witness.push(word);
                        idx
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }

        let descents: Vec<Vec<usize>> = (0..elements.len())
            .map(|w| {
                (0..rank)
                    .filter(|&s| length[right[w][s]] < length[w])
                    .collect()
            })
            .collect();
        for w in 0..elements.len() {
            for s in 0..rank {
                let lw = length[w];
                let lws = length[right[w][s]];
                if lws != lw + 1 && lws + 1 != lw {
                    return Err(Error::InvalidInput(
                        "length is not changed by one under a generator".into(),
                    ));
                }
            }
        }
        let max_len = *length.iter().max().unwrap();
        if max_len != spec.longest_length() {
            return Err(Error::InvalidInput(format!(
                "longest length {max_len} does not match the root count {}",
                spec.longest_length()
            )));
        }
        let longest: Vec<usize> = (0..elements.len())
            .filter(|&w| descents[w].len() == rank)
            .collect();
        if longest.len() != 1 || length[longest[0]] != max_len {
            return Err(Error::InvalidInput(
                "longest element is not the unique element with full descent set".into(),
            ));
        }
        let w0 = longest[0];

        Ok(CoxeterSystem {
            spec,
            gen_names,
            elements,
            length,
            right,
            descents,
            witness,
            w0,
            index,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.gen_names.len()
    }

    /// Group product by composing the permutation realizations.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a];
        let pb = &self.elements[b];
        let prod: Vec<usize> = pb.iter().map(|&p| pa[p]).collect();
        self.index[&prod]
    }

    /// Element reached by multiplying the letters of `word` left to right.
    pub fn eval(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &s| self.right[w][s])
    }

    /// All reduced words for `w`, lexicographically sorted.
    pub fn reduced_words(&self, w: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut spent = 0u64;
        self.reduced_words_rec(w, &mut Vec::new(), &mut out, &mut spent, budget)?;
        for word in &mut out {
            word.reverse();
        }
        out.sort();
        Ok(out)
    }

    fn reduced_words_rec(
        &self,
        w: usize,
        suffix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        spent: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if w == 0 {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    unit: "reduced words",
                });
            }
            out.push(suffix.clone());
            return Ok(());
        }
        for &s in &self.descents[w] {
            suffix.push(s);
            self.reduced_words_rec(self.right[w][s], suffix, out, spent, budget)?;
            suffix.pop();
        }
        Ok(())
    }

    /// Number of reduced words for `w`, by dynamic programming over
    /// descents.
    pub fn reduced_word_count(&self, w: usize) -> BigInt {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&v| self.length[v]);
        let mut count = vec![BigInt::zero(); self.size()];
        for &v in &order {
            if v == 0 {
                count[v] = BigInt::one();
            } else {
                count[v] = self.descents[v]
                    .iter()
                    .map(|&s| count[self.right[v][s]].clone())
                    .sum();
            }
        }
        count[w].clone()
    }

    /// The longest element of the standard parabolic subgroup generated by
    /// `j` (generator indices).
    pub fn longest_parabolic(&self, j: &[usize]) -> usize {
        // Closure under the chosen generators; the longest element is the
        // unique length maximum.
        let mut seen = vec![false; self.size()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut best = 0;
        while let Some(w) = stack.pop() {
            if self.length[w] > self.length[best] {
                best = w;
            }
            for &s in j {
                let next = self.right[w][s];
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        best
    }

    /// The exchange move: prepend `s` and delete the unique letter at which
    /// the prefix products first drop in length.
    pub fn exchange_op(&self, s: usize, word: &[usize]) -> Result<Vec<usize>> {
        if self.eval(word) != self.w0 || word.len() != self.length[self.w0] {
            return Err(Error::Precondition(
                "exchange moves require a reduced word of the longest element".into(),
            ));
        }
        let mut cur = self.right[0][s];
        for (i, &c) in word.iter().enumerate() {
            let next = self.right[cur][c];
            if self.length[next] < self.length[cur] {
                let mut out = Vec::with_capacity(word.len());
                out.push(s);
                out.extend(word[..i].iter().copied());
                out.extend(word[i + 1..].iter().copied());
                return Ok(out);
            }
            cur = next;
        }
        Err(Error::Precondition(
            "no length drop while exchanging; word was not reduced for w0".into(),
        ))
    }

    fn word_label(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&s| (s + 1).to_string()).collect()
        }
    }
}

/// The exchange walk state space R(w0) with one generator per letter.
pub struct ExchangeWalk {
    pub words: Vec<Vec<usize>>,
    pub generators: GeneratorSet,
}

pub fn exchange_walk(sys: &CoxeterSystem, budget: u64) -> Result<ExchangeWalk> {
    let words = sys.reduced_words(sys.w0, budget)?;
    let index: HashMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut maps = Vec::new();
    for s in 0..sys.rank() {
        let mut targets = Vec::with_capacity(words.len());
        for word in &words {
            targets.push(index[&sys.exchange_op(s, word)?]);
        }
        maps.push(Transformation { targets });
    }
    let labels = words.iter().map(|w| sys.word_label(w)).collect();
    let generators = GeneratorSet::new(
        StateSpace::new(labels),
        sys.gen_names.clone(),
        maps,
    )?;
    Ok(ExchangeWalk { words, generators })
}

/// 0-Hecke generators acting on the group by right multiplication when the
/// length goes up and fixing the element otherwise.
pub fn hecke_generators(sys: &CoxeterSystem) -> Result<GeneratorSet> {
    let labels = (0..sys.size())
        .map(|w| sys.word_label(&sys.witness[w]))
        .collect();
    let mut maps = Vec::new();
    for s in 0..sys.rank() {
        let targets = (0..sys.size())
            .map(|w| {
                let ws = sys.right[w][s];
                if sys.length[ws] > sys.length[w] {
                    ws
                } else {
                    w
                }
            })
            .collect();
        maps.push(Transformation { targets });
    }
    GeneratorSet::new(StateSpace::new(labels), sys.gen_names.clone(), maps)
}

/// Karnofsky-Rhodes expansion: states are the Coxeter-reduced words over S
/// (all of them, across group elements), and the letter s acts by left
/// multiplication with descent stripping.
pub fn kr_expansion_generators(sys: &CoxeterSystem, budget: u64) -> Result<GeneratorSet> {
    let mut words = Vec::new();
    let mut spent = 0u64;
    for w in 0..sys.size() {
        let mut batch = sys.reduced_words(w, budget)?;
        spent += batch.len() as u64;
        if spent > budget {
            return Err(Error::BudgetExceeded {
                budget,
                unit: "reduced words",
            });
        }
        words.append(&mut batch);
    }
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let strip = |prefix: usize, tail: &[usize]| -> Vec<usize> {
        // Left-to-right descent stripping of `tail` after the one-letter
        // prefix: a letter is kept only if it extends the length.
        let mut word = vec![prefix];
        let mut cur = sys.right[0][prefix];
        for &c in tail {
            let next = sys.right[cur][c];
            if sys.length[next] > sys.length[cur] {
                word.push(c);
                cur = next;
            }
        }
        word
    };
    let mut maps = Vec::new();
    for s in 0..sys.rank() {
        let targets = words.iter().map(|w| index[&strip(s, w)]).collect();
        maps.push(Transformation { targets });
    }
    let labels = words.iter().map(|w| sys.word_label(w)).collect();
    GeneratorSet::new(StateSpace::new(labels), sys.gen_names.clone(), maps)
}

/// One closed-form eigenvalue slot of the exchange walk, indexed by a
/// subset of the generators.
#[derive(Clone, Debug)]
pub struct ExchangeSpectrumEntry {
    pub subset: Vec<usize>,
    pub lambda: Rat,
    pub multiplicity: BigInt,
}

/// Closed-form spectrum of the exchange walk: lambda_J is the weight of J,
/// with multiplicity an alternating sum of reduced word counts of the
/// elements w_K w0 over supersets K of J.
pub fn exchange_spectrum(sys: &CoxeterSystem, p: &[Rat]) -> Result<Vec<ExchangeSpectrumEntry>> {
    let rank = sys.rank();
    if p.len() != rank {
        return Err(Error::DimensionMismatch(
            "one weight per generator required".into(),
        ));
    }
    let mut entries = Vec::new();
    for mask in 0u32..1 << rank {
        let subset: Vec<usize> = (0..rank).filter(|&s| mask >> s & 1 == 1).collect();
        let lambda: Rat = subset.iter().map(|&s| p[s].clone()).sum();
        let mut multiplicity = BigInt::zero();
        for sup in 0u32..1 << rank {
            if sup & mask == mask {
                let k: Vec<usize> = (0..rank).filter(|&s| sup >> s & 1 == 1).collect();
                let wk = sys.longest_parabolic(&k);
                let count = sys.reduced_word_count(sys.product(wk, sys.w0));
                if (sup.count_ones() - mask.count_ones()) % 2 == 0 {
                    multiplicity += count;
                } else {
                    multiplicity -= count;
                }
            }
        }
        entries.push(ExchangeSpectrumEntry {
            subset,
            lambda,
            multiplicity,
        });
    }
    Ok(entries)
}

/// Closed-form stationary distribution on R(w0): a product over the
/// letters, each divided by one minus the weight of the prefix's right
/// descent set.
pub fn exchange_stationary(
    sys: &CoxeterSystem,
    words: &[Vec<usize>],
    p: &[Rat],
) -> Result<Vec<Rat>> {
    if p.len() != sys.rank() {
        return Err(Error::DimensionMismatch(
            "one weight per generator required".into(),
        ));
    }
    let mut out = Vec::with_capacity(words.len());
    for word in words {
        let mut value = Rat::one();
        let mut prefix = 0usize;
        for &s in word {
            let lambda: Rat = sys.descents[prefix].iter().map(|&d| p[d].clone()).sum();
            let denom = Rat::one() - lambda;
            if denom.is_zero() {
                return Err(Error::Precondition(
                    "stationary product formula hit a unit eigenvalue".into(),
                ));
            }
            value *= p[s].clone() / denom;
            prefix = sys.right[prefix][s];
        }
        out.push(value);
    }
    Ok(out)
}

/// Step count from the proof constant 2(m + c - 1)/p guaranteeing total
/// variation below e^{-c}, where m is the length of w0 and p the smallest
/// letter weight.
pub fn exchange_mixing_bound(sys: &CoxeterSystem, p: &[Rat], c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::Precondition("c must be positive".into()));
    }
    let p_min = p
        .iter()
        .min()
        .ok_or_else(|| Error::InvalidInput("empty weights".into()))?;
    if !p_min.is_positive() {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    let m = sys.length[sys.w0] as u64;
    let value = rat_int(2 * (m + c - 1) as i64) / p_min.clone();
    Ok(value.ceil().to_integer().to_u64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn sys(text: &str) -> CoxeterSystem {
        CoxeterSystem::build(CoxeterSpec::parse(text).unwrap(), DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn small_groups_have_the_right_orders() {
        assert_eq!(sys("A1").size(), 2);
        assert_eq!(sys("A2").size(), 6);
        assert_eq!(sys("A3").size(), 24);
        assert_eq!(sys("B2").size(), 8);
        assert_eq!(sys("B3").size(), 48);
        assert_eq!(sys("D3").size(), 24);
        assert_eq!(sys("I2(5)").size(), 10);
        assert_eq!(sys("I2(3)").size(), 6);
        assert_eq!(sys("A2xA1").size(), 12);
        assert_eq!(sys("A1xA1xA1").size(), 8);
    }

    #[test]
    fn unsupported_types_are_rejected() {
        assert!(matches!(
            CoxeterSpec::parse("H3"),
            Err(Error::UnsupportedType(_))
        ));
        assert!(matches!(
            CoxeterSpec::parse("E8"),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn longest_element_lengths_match_root_counts() {
        for text in ["A1", "A2", "A3", "B2", "B3", "D3", "I2(5)", "A2xA1"] {
            let s = sys(text);
            assert_eq!(s.length[s.w0], s.spec.longest_length(), "{text}");
        }
    }

    #[test]
    fn reduced_words_of_small_groups() {
        let a2 = sys("A2");
        let words = a2.reduced_words(a2.w0, 10_000).unwrap();
        assert_eq!(words, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        let prod = sys("A2xA1");
        assert_eq!(prod.reduced_words(prod.w0, 10_000).unwrap().len(), 8);
        assert_eq!(
            prod.reduced_word_count(prod.w0),
            BigInt::from(8),
        );
    }

    #[test]
    fn exchange_convention_is_pinned() {
        // In A2, exchanging s1 into 212 gives 121, and 121 is fixed.
        let a2 = sys("A2");
        assert_eq!(a2.exchange_op(0, &[1, 0, 1]).unwrap(), vec![0, 1, 0]);
        assert_eq!(a2.exchange_op(0, &[0, 1, 0]).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn exchange_moves_are_idempotent_maps() {
        let walk = exchange_walk(&sys("A2xA1"), 10_000).unwrap();
        for map in &walk.generators.maps {
            assert!(map.is_idempotent());
        }
    }

    #[test]
    fn rank_one_powers_recover_move_to_front() {
        // In A1 x A1 the exchange walk is the Tsetlin library on 2 books.
        let s = sys("A1xA1");
        let walk = exchange_walk(&s, 10_000).unwrap();
        assert_eq!(walk.words.len(), 2);
        // Generator s1 sends both linear orders to the one starting with
        // s1.
        let first = walk
            .words
            .iter()
            .position(|w| w.first() == Some(&0))
            .unwrap();
        assert!(walk.generators.maps[0]
            .targets
            .iter()
            .all(|&t| t == first));
    }

    #[test]
    fn parabolic_longest_elements() {
        let a2 = sys("A2");
        assert_eq!(a2.longest_parabolic(&[]), 0);
        assert_eq!(a2.longest_parabolic(&[0, 1]), a2.w0);
        let s1_longest = a2.longest_parabolic(&[0]);
        assert_eq!(a2.length[s1_longest], 1);
        // w_J is an involution.
        assert_eq!(a2.product(s1_longest, s1_longest), 0);
    }

    #[test]
    fn exchange_spectrum_multiplicities_sum_to_word_count() {
        let s = sys("A2xA1");
        let p = vec![rat(1, 2), rat(1, 4), rat(1, 4)];
        let entries = exchange_spectrum(&s, &p).unwrap();
        let total: BigInt = entries.iter().map(|e| e.multiplicity.clone()).sum();
        assert_eq!(total, BigInt::from(8));
        // The full subset carries the unit eigenvalue with multiplicity 1.
        let top = entries.iter().find(|e| e.subset.len() == 3).unwrap();
        assert!(top.lambda.is_one());
        assert_eq!(top.multiplicity, BigInt::one());
    }

    #[test]
    fn stationary_product_on_commuting_letters() {
        // A1 x A1: pi(word starting with a) = P(a).
        let s = sys("A1xA1");
        let words = s.reduced_words(s.w0, 100).unwrap();
        let p = vec![rat(1, 3), rat(2, 3)];
        let pi = exchange_stationary(&s, &words, &p).unwrap();
        for (word, value) in words.iter().zip(&pi) {
            assert_eq!(*value, p[word[0]].clone());
        }
    }

    #[test]
    fn mixing_bound_formula() {
        let a1 = sys("A1");
        assert_eq!(
            exchange_mixing_bound(&a1, &[rat(1, 1)], 1).unwrap(),
            2
        );
        let a2 = sys("A2");
        assert_eq!(
            exchange_mixing_bound(&a2, &[rat(1, 2), rat(1, 2)], 1).unwrap(),
            12
        );
    }

    #[test]
    fn hecke_monoid_of_a2() {
        use crate::monoid::{FiniteMonoid, DEFAULT_ELEMENT_CAP};
        let s = sys("A2");
        let gens = hecke_generators(&s).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.size(), 6);
        // Idempotents are indexed by subsets of S.
        assert_eq!(m.idempotents().len(), 4);
    }

    #[test]
    fn kr_expansion_of_a1a1_is_the_free_band_on_two_letters() {
        use crate::green::{is_karnofsky_rhodes, GreenStructure};
        use crate::monoid::{FiniteMonoid, DEFAULT_ELEMENT_CAP};
        let s = sys("A1xA1");
        let gens = kr_expansion_generators(&s, 10_000).unwrap();
        assert_eq!(gens.states.size(), 5);
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.size(), 5);
        assert!(is_karnofsky_rhodes(&m).0);
        let green = GreenStructure::compute(&m);
        assert_eq!(green.minimal_ideal.len(), 2);
    }
}
