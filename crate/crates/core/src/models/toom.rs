//! Toom-style shelf dynamics: the multiple-copy library with fixed content
//! and the interlibrary loan variant on a shelf of fixed length.
//!
//! Books are numbered 1..=m. The operator named `d{b}_{j}` acts on a word by
//! moving the j-th copy of book b (counted from the left) leftwards until it
//! sits immediately after the (j-1)-st copy, or to the front when j = 1. In
//! the loan variant, when the shelf holds only j-1 copies of b the operator
//! instead inserts a fresh copy at that spot and drops the last book off the
//! shelf; with fewer than j-1 copies it does nothing.

use crate::error::{Error, Result};
use crate::ratio::{multinomial, rat_int, Rat};
use crate::transform::{GeneratorSet, StateSpace, Transformation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Fixed-content shelf: `content[b-1]` copies of book b, with one positive
/// rational weight per operator, summing to 1.
#[derive(Clone, Debug)]
pub struct ToomFixedSpec {
    pub content: Vec<u64>,
    /// weights[b-1][j-1] is the weight of `d{b}_{j}`.
    pub weights: Vec<Vec<Rat>>,
}

impl ToomFixedSpec {
    pub fn new(content: Vec<u64>, weights: Vec<Vec<Rat>>) -> Result<Self> {
        let spec = ToomFixedSpec { content, weights };
        spec.validate()?;
        Ok(spec)
    }

    pub fn uniform(content: Vec<u64>) -> Result<Self> {
        let total: u64 = content.iter().sum();
        if total == 0 {
            return Err(Error::InvalidInput("empty content".into()));
        }
        let weights = content
            .iter()
            .map(|&n| vec![rat_int(1) / rat_int(total as i64); n as usize])
            .collect();
        Self::new(content, weights)
    }

    fn validate(&self) -> Result<()> {
        if self.content.is_empty() || self.content.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput(
                "content must list a positive copy count per book".into(),
            ));
        }
        if self.content.len() > 9 {
            return Err(Error::InvalidInput("at most 9 books supported".into()));
        }
        if self.weights.len() != self.content.len()
            || self
                .weights
                .iter()
                .zip(&self.content)
                .any(|(w, &n)| w.len() != n as usize)
        {
            return Err(Error::InvalidInput(
                "weights must provide one entry per (book, copy) pair".into(),
            ));
        }
        check_weight_sum(self.weights.iter().flatten())
    }

    pub fn shelf_length(&self) -> u64 {
        self.content.iter().sum()
    }

    pub fn books(&self) -> usize {
        self.content.len()
    }

    /// Weights flattened in generator listing order (book-major, copy
    /// ascending), for use with `ProbabilityAssignment::on_generators`.
    pub fn flat_weights(&self) -> Vec<Rat> {
        self.weights.iter().flatten().cloned().collect()
    }

    /// Index of generator `d{b}_{j}` in the listing order.
    pub fn generator_index(&self, b: usize, j: u64) -> usize {
        let offset: u64 = self.content[..b - 1].iter().sum();
        (offset + j - 1) as usize
    }
}

/// Loan shelf: words of length `shelf` over m books, one operator per
/// (book, copy index up to the shelf length).
#[derive(Clone, Debug)]
pub struct ToomLoanSpec {
    pub books: usize,
    pub shelf: usize,
    /// weights[b-1][j-1] is the weight of `d{b}_{j}`, j = 1..=shelf.
    pub weights: Vec<Vec<Rat>>,
}

impl ToomLoanSpec {
    pub fn new(books: usize, shelf: usize, weights: Vec<Vec<Rat>>) -> Result<Self> {
        let spec = ToomLoanSpec {
            books,
            shelf,
            weights,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn uniform(books: usize, shelf: usize) -> Result<Self> {
        if books == 0 || shelf == 0 {
            return Err(Error::InvalidInput("books and shelf must be positive".into()));
        }
        let total = (books * shelf) as i64;
        let weights = vec![vec![rat_int(1) / rat_int(total); shelf]; books];
        Self::new(books, shelf, weights)
    }

    fn validate(&self) -> Result<()> {
        if self.books == 0 || self.books > 9 || self.shelf == 0 {
            return Err(Error::InvalidInput(
                "need 1 <= books <= 9 and a positive shelf length".into(),
            ));
        }
        if self.weights.len() != self.books
            || self.weights.iter().any(|w| w.len() != self.shelf)
        {
            return Err(Error::InvalidInput(
                "weights must be a books x shelf table".into(),
            ));
        }
        check_weight_sum(self.weights.iter().flatten())
    }

    pub fn flat_weights(&self) -> Vec<Rat> {
        self.weights.iter().flatten().cloned().collect()
    }

    pub fn generator_index(&self, b: usize, j: u64) -> usize {
        (b - 1) * self.shelf + (j as usize - 1)
    }
}

fn check_weight_sum<'a>(weights: impl Iterator<Item = &'a Rat>) -> Result<()> {
    let mut sum = Rat::zero();
    for w in weights {
        if !w.is_positive() {
            return Err(Error::NotStochastic("weights must be positive".into()));
        }
        sum += w;
    }
    if !sum.is_one() {
        return Err(Error::NotStochastic(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

/// All words of the given content over books 1..=m, lexicographically.
pub fn words_of_content(content: &[u64]) -> Vec<Vec<usize>> {
    let len: u64 = content.iter().sum();
    let mut remaining = content.to_vec();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len as usize);
    fn rec(
        remaining: &mut [u64],
        word: &mut Vec<usize>,
        len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                word.push(b + 1);
                rec(remaining, word, len, out);
                word.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut remaining, &mut word, len as usize, &mut out);
    out
}

/// All words of length `shelf` over books 1..=m, lexicographically.
pub fn all_words(books: usize, shelf: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(books.pow(shelf as u32));
    let mut word = Vec::with_capacity(shelf);
    fn rec(books: usize, shelf: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == shelf {
            out.push(word.clone());
            return;
        }
        for b in 1..=books {
            word.push(b);
            rec(books, shelf, word, out);
            word.pop();
        }
    }
    rec(books, shelf, &mut word, &mut out);
    out
}

fn word_label(word: &[usize]) -> String {
    word.iter().map(|b| b.to_string()).collect()
}

/// Position (0-based) of the j-th copy of `b` in `word`, if present.
fn copy_position(word: &[usize], b: usize, j: u64) -> Option<usize> {
    let mut seen = 0u64;
    for (i, &x) in word.iter().enumerate() {
        if x == b {
            seen += 1;
            if seen == j {
                return Some(i);
            }
        }
    }
    None
}

/// The fixed-content move: relocate the j-th copy of `b` to sit immediately
/// after the (j-1)-st copy (to the front when j = 1).
pub fn bulk_apply(word: &[usize], b: usize, j: u64) -> Vec<usize> {
    let p = match copy_position(word, b, j) {
        Some(p) => p,
        None => return word.to_vec(),
    };
    let dest = if j == 1 {
        0
    } else {
        copy_position(word, b, j - 1).expect("earlier copy exists") + 1
    };
    let mut out = word.to_vec();
    let moved = out.remove(p);
    out.insert(dest, moved);
    out
}

/// The loan move on a shelf of fixed length; see the module docs.
pub fn loan_apply(word: &[usize], b: usize, j: u64) -> Vec<usize> {
    let n_b = word.iter().filter(|&&x| x == b).count() as u64;
    if j <= n_b {
        bulk_apply(word, b, j)
    } else if j == n_b + 1 {
        let dest = if j == 1 {
            0
        } else {
            copy_position(word, b, j - 1).expect("earlier copy exists") + 1
        };
        let mut out = word.to_vec();
        out.insert(dest, b);
        out.truncate(word.len());
        out
    } else {
        word.to_vec()
    }
}

fn generator_set_from_action<F>(
    states: Vec<Vec<usize>>,
    names: Vec<String>,
    ops: Vec<(usize, u64)>,
    apply: F,
) -> Result<GeneratorSet>
where
    F: Fn(&[usize], usize, u64) -> Vec<usize>,
{
    let index: HashMap<&Vec<usize>, usize> =
        states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let maps = ops
        .iter()
        .map(|&(b, j)| Transformation {
            targets: states.iter().map(|w| index[&apply(w, b, j)]).collect(),
        })
        .collect();
    let labels = states.iter().map(|w| word_label(w)).collect();
    let mut gens = GeneratorSet::new(StateSpace::new(labels), names, maps)?;
    // Listing generators book-major with ascending copy index is a
    // topological sort of the order d{b}_{i} < d{b}_{j} for i < j required
    // by the tree-monoid check.
    gens.tree_order = Some((0..gens.maps.len()).collect());
    Ok(gens)
}

/// Generators of the fixed-content model on all words of the spec's content.
pub fn toom_fixed_generators(spec: &ToomFixedSpec) -> Result<GeneratorSet> {
    let states = words_of_content(&spec.content);
    let mut names = Vec::new();
    let mut ops = Vec::new();
    for (b0, &n) in spec.content.iter().enumerate() {
        for j in 1..=n {
            names.push(format!("d{}_{}", b0 + 1, j));
            ops.push((b0 + 1, j));
        }
    }
    generator_set_from_action(states, names, ops, |w, b, j| bulk_apply(w, b, j))
}

/// Generators of the loan model on all words of the shelf length.
pub fn toom_loan_generators(spec: &ToomLoanSpec) -> Result<GeneratorSet> {
    let states = all_words(spec.books, spec.shelf);
    let mut names = Vec::new();
    let mut ops = Vec::new();
    for b in 1..=spec.books {
        for j in 1..=spec.shelf as u64 {
            names.push(format!("d{b}_{j}"));
            ops.push((b, j));
        }
    }
    generator_set_from_action(states, names, ops, |w, b, j| loan_apply(w, b, j))
}

/// Number of derangement words of the given content: words with no letter in
/// a position where the sorted reference word holds the same letter.
/// Inclusion-exclusion over the set of agreeing positions.
pub fn word_derangement_count(content: &[u64]) -> BigInt {
    let m = content.len();
    let mut total = BigInt::zero();
    let mut k = vec![0u64; m];
    loop {
        let fixed: u64 = k.iter().sum();
        let mut term = if fixed % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let rest: Vec<u64> = content.iter().zip(&k).map(|(&n, &ki)| n - ki).collect();
        for (&n, &ki) in content.iter().zip(&k) {
            term *= crate::ratio::binomial(n, ki);
        }
        term *= multinomial(&rest);
        total += term;
        // Odometer over 0 <= k_i <= n_i.
        let mut i = 0;
        loop {
            if i == m {
                return total;
            }
            if k[i] < content[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Brute-force derangement count, used as an oracle in tests.
pub fn word_derangement_brute(content: &[u64]) -> BigInt {
    let mut reference = Vec::new();
    for (b0, &n) in content.iter().enumerate() {
        reference.extend(std::iter::repeat(b0 + 1).take(n as usize));
    }
    let count = words_of_content(content)
        .iter()
        .filter(|w| w.iter().zip(&reference).all(|(a, b)| a != b))
        .count();
    BigInt::from(count)
}

/// Word over generator indices realizing the idempotent for a subset tuple:
/// the product over books (ascending, leftmost factor applied last) of the
/// operators with copy indices taken decreasingly.
fn idempotent_word<F>(subsets: &[Vec<u64>], index_of: F) -> Vec<usize>
where
    F: Fn(usize, u64) -> usize,
{
    let mut word = Vec::new();
    for (b0, subset) in subsets.iter().enumerate() {
        let mut sorted = subset.clone();
        sorted.sort_unstable();
        for &j in sorted.iter().rev() {
            word.push(index_of(b0 + 1, j));
        }
    }
    word
}

pub fn toom_fixed_idempotent_word(spec: &ToomFixedSpec, subsets: &[Vec<u64>]) -> Vec<usize> {
    idempotent_word(subsets, |b, j| spec.generator_index(b, j))
}

pub fn toom_loan_idempotent_word(spec: &ToomLoanSpec, subsets: &[Vec<u64>]) -> Vec<usize> {
    idempotent_word(subsets, |b, j| spec.generator_index(b, j))
}

/// Closed-form fixed point count of the fixed-content idempotent.
pub fn toom_fixed_fixed_point_count(spec: &ToomFixedSpec, subsets: &[Vec<u64>]) -> BigInt {
    let rest: Vec<u64> = spec
        .content
        .iter()
        .zip(subsets)
        .map(|(&n, s)| n - s.len() as u64)
        .collect();
    multinomial(&rest)
}

/// One eigenvalue slot of a closed-form spectrum, indexed by the subset
/// tuple of operator copy indices per book.
#[derive(Clone, Debug)]
pub struct ClosedFormEntry {
    pub subsets: Vec<Vec<u64>>,
    pub lambda: Rat,
    pub multiplicity: BigInt,
}

fn subset_tuples(limits: &[u64]) -> Vec<Vec<Vec<u64>>> {
    // All tuples (S_1, ..., S_m) with S_i a subset of 1..=limits[i], in
    // lexicographic bitmask order.
    let mut out = Vec::new();
    let mut masks = vec![0u64; limits.len()];
    loop {
        out.push(
            masks
                .iter()
                .map(|&mask| (0..64).filter(|&b| mask >> b & 1 == 1).map(|b| b + 1).collect())
                .collect(),
        );
        let mut i = masks.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if masks[i] + 1 < 1u64 << limits[i] {
                masks[i] += 1;
                break;
            }
            masks[i] = 0;
            if i == 0 {
                return out;
            }
        }
    }
}

fn tuple_lambda(weights: &[Vec<Rat>], subsets: &[Vec<u64>]) -> Rat {
    let mut lambda = Rat::zero();
    for (w, subset) in weights.iter().zip(subsets) {
        for &j in subset {
            lambda += &w[j as usize - 1];
        }
    }
    lambda
}

/// Closed-form spectrum of the fixed-content model: one slot per subset
/// tuple, eigenvalue the tuple's weight sum, multiplicity a word derangement
/// number of the leftover content.
pub fn toom_fixed_spectrum(spec: &ToomFixedSpec) -> Vec<ClosedFormEntry> {
    subset_tuples(&spec.content)
        .into_iter()
        .map(|subsets| {
            let lambda = tuple_lambda(&spec.weights, &subsets);
            let rest: Vec<u64> = spec
                .content
                .iter()
                .zip(&subsets)
                .map(|(&n, s)| n - s.len() as u64)
                .collect();
            ClosedFormEntry {
                lambda,
                multiplicity: word_derangement_count(&rest),
                subsets,
            }
        })
        .collect()
}

/// Closed-form fixed point count for a loan-model idempotent.
///
/// When some complement is empty, or the complements' minima add up to at
/// least shelf + books, the idempotent has a single fixed point; otherwise
/// the count sums a multinomial over the admissible contents.
pub fn toom_loan_fixed_point_count(spec: &ToomLoanSpec, subsets: &[Vec<u64>]) -> BigInt {
    let l = spec.shelf as u64;
    let m = spec.books;
    let big = l + m as u64;
    let min_complement: Vec<u64> = subsets
        .iter()
        .map(|s| (1..=l).find(|j| !s.contains(j)).unwrap_or(big))
        .collect();
    if min_complement.iter().sum::<u64>() >= big {
        return BigInt::one();
    }
    // Sum over contents n with |n| = L, n_i > 0 whenever 1 is in R_i, and at
    // most one book with n_i + 1 in R_i.
    let mut total = BigInt::zero();
    let mut n = vec![0u64; m];
    fn rec(
        i: usize,
        left: u64,
        n: &mut Vec<u64>,
        subsets: &[Vec<u64>],
        total: &mut BigInt,
    ) {
        if i == n.len() {
            if left != 0 {
                return;
            }
            let bumps = n
                .iter()
                .zip(subsets)
                .filter(|(&ni, s)| s.contains(&(ni + 1)))
                .count();
            if bumps > 1 {
                return;
            }
            if n.iter().zip(subsets).any(|(&ni, s)| ni == 0 && s.contains(&1)) {
                return;
            }
            // A multinomial with a negative part is zero: skip contents
            // where more operators bind than copies are present.
            let mut rest = Vec::with_capacity(n.len());
            for (&ni, s) in n.iter().zip(subsets) {
                let fi = s.iter().filter(|&&r| ni >= r - 1).count() as u64;
                if fi > ni {
                    return;
                }
                rest.push(ni - fi);
            }
            *total += multinomial(&rest);
            return;
        }
        for ni in 0..=left {
            n[i] = ni;
            rec(i + 1, left - ni, n, subsets, total);
        }
        n[i] = 0;
    }
    rec(0, l, &mut n, subsets, &mut total);
    total
}

/// Spectrum of the loan model: eigenvalues per subset tuple, multiplicities
/// by Moebius inversion over the closed-form fixed point counts.
pub fn toom_loan_spectrum(spec: &ToomLoanSpec) -> Vec<ClosedFormEntry> {
    let l = spec.shelf as u64;
    let limits = vec![l; spec.books];
    let tuples = subset_tuples(&limits);
    tuples
        .iter()
        .map(|subsets| {
            let lambda = tuple_lambda(&spec.weights, subsets);
            let mut mult = BigInt::zero();
            for sup in &tuples {
                if subsets
                    .iter()
                    .zip(sup)
                    .all(|(s, u)| s.iter().all(|j| u.contains(j)))
                {
                    let extra: usize = sup
                        .iter()
                        .zip(subsets)
                        .map(|(u, s)| u.len() - s.len())
                        .sum();
                    let count = toom_loan_fixed_point_count(spec, sup);
                    if extra % 2 == 0 {
                        mult += count;
                    } else {
                        mult -= count;
                    }
                }
            }
            ClosedFormEntry {
                lambda,
                multiplicity: mult,
                subsets: subsets.clone(),
            }
        })
        .collect()
}

/// One tuple of the conjecture sweep: the subset tuple, the multiplicity
/// computed by Moebius inversion, and the conjectured derangement value.
#[derive(Clone, Debug)]
pub struct ConjectureEntry {
    pub subsets: Vec<Vec<u64>>,
    pub computed: BigInt,
    pub conjectured: BigInt,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub entries: Vec<ConjectureEntry>,
    pub mismatches: usize,
}

/// Sweeps every tuple of proper subsets for the loan model and compares the
/// Moebius-inverted multiplicity against the conjectured closed form
/// (books - 1) * d over the complement sizes less one, applicable when the
/// complements' maxima sum to at most shelf + books - 1 (zero otherwise).
/// Both sides are reported; neither is treated as ground truth.
pub fn check_interlibrary_conjecture(
    books: usize,
    shelf: usize,
    budget: u64,
) -> Result<ConjectureReport> {
    let spec = ToomLoanSpec::uniform(books, shelf)?;
    let l = shelf as u64;
    let tuples = subset_tuples(&vec![l; books]);
    let work = (tuples.len() as u64).saturating_mul(tuples.len() as u64);
    if work > budget {
        return Err(Error::BudgetExceeded {
            budget,
            unit: "subset tuple pairs",
        });
    }
    let spectrum = toom_loan_spectrum(&spec);
    let mut entries = Vec::new();
    let mut mismatches = 0;
    for entry in spectrum {
        if entry.subsets.iter().any(|s| s.len() as u64 == l) {
            continue; // only proper subsets per book
        }
        let comp_sizes: Vec<u64> = entry.subsets.iter().map(|s| l - s.len() as u64 - 1).collect();
        let max_sum: u64 = entry
            .subsets
            .iter()
            .map(|s| (1..=l).rev().find(|j| !s.contains(j)).expect("proper subset"))
            .sum();
        let conjectured = if max_sum <= l + books as u64 - 1 {
            BigInt::from(books as i64 - 1) * word_derangement_count(&comp_sizes)
        } else {
            BigInt::zero()
        };
        let matches = entry.multiplicity == conjectured;
        if !matches {
            mismatches += 1;
        }
        entries.push(ConjectureEntry {
            subsets: entry.subsets,
            computed: entry.multiplicity,
            conjectured,
            matches,
        });
    }
    Ok(ConjectureReport { entries, mismatches })
}

/// A word over fixed-model generator indices sending every state of the
/// spec's content to `target`, built block by block.
pub fn toom_fixed_reset_word(spec: &ToomFixedSpec, target: &[usize]) -> Vec<usize> {
    reset_word_blocks(target, |b, j| spec.generator_index(b, j))
}

/// Loan-model reset word: a content-setting pass (applied first) followed by
/// the fixed-content block construction.
pub fn toom_loan_reset_word(spec: &ToomLoanSpec, target: &[usize]) -> Vec<usize> {
    let mut word = reset_word_blocks(target, |b, j| spec.generator_index(b, j));
    // Applied before the block pass (our words act rightmost first): pull
    // the required number of copies of each book onto the shelf.
    for b in 1..=spec.books {
        let n_b = target.iter().filter(|&&x| x == b).count() as u64;
        for j in (1..=n_b).rev() {
            word.push(spec.generator_index(b, j));
        }
    }
    word
}

fn reset_word_blocks<F>(target: &[usize], index_of: F) -> Vec<usize>
where
    F: Fn(usize, u64) -> usize,
{
    // Split the target into maximal blocks of one book and emit, per block
    // from left to right, the operators for that book's copies counted
    // through the block, decreasing. Words apply rightmost first, so the
    // leftmost block's operators act last.
    let mut word = Vec::new();
    let mut pos = 0;
    while pos < target.len() {
        let b = target[pos];
        let mut end = pos;
        while end < target.len() && target[end] == b {
            end += 1;
        }
        let through_block = target[..end].iter().filter(|&&x| x == b).count() as u64;
        for j in (1..=through_block).rev() {
            word.push(index_of(b, j));
        }
        pos = end;
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{FiniteMonoid, DEFAULT_ELEMENT_CAP};
    use crate::ratio::rat;

    fn spec22() -> ToomFixedSpec {
        ToomFixedSpec::new(
            vec![2, 2],
            vec![
                vec![rat(1, 10), rat(1, 5)],
                vec![rat(3, 10), rat(2, 5)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn bulk_moves_follow_the_case_split() {
        // Moving the 2nd copy of 1 next to the 1st copy.
        assert_eq!(bulk_apply(&[1, 2, 2, 1], 1, 2), vec![1, 1, 2, 2]);
        // Moving the 1st copy of 2 to the front.
        assert_eq!(bulk_apply(&[1, 2, 2, 1], 2, 1), vec![2, 1, 2, 1]);
        // Already in place: fixed point.
        assert_eq!(bulk_apply(&[1, 1, 2, 2], 1, 2), vec![1, 1, 2, 2]);
    }

    #[test]
    fn loan_moves_insert_and_truncate() {
        // One copy of 2 present; d2_2 inserts a new copy after it and the
        // last book falls off.
        assert_eq!(loan_apply(&[2, 1, 1, 1], 2, 2), vec![2, 2, 1, 1]);
        // No copy of 1 present; d1_1 prepends.
        assert_eq!(loan_apply(&[2, 2], 1, 1), vec![1, 2]);
        // Too few copies: identity.
        assert_eq!(loan_apply(&[2, 2], 1, 3), vec![2, 2]);
        // Inserting at the very end and truncating is a fixed point.
        assert_eq!(loan_apply(&[1, 1], 1, 3), vec![1, 1]);
    }

    #[test]
    fn fixed_generators_are_idempotent() {
        let gens = toom_fixed_generators(&spec22()).unwrap();
        assert_eq!(gens.states.size(), 6);
        assert_eq!(gens.names, vec!["d1_1", "d1_2", "d2_1", "d2_2"]);
        for map in &gens.maps {
            assert!(map.is_idempotent());
        }
    }

    #[test]
    fn derangement_counts_match_brute_force() {
        for content in [
            vec![1],
            vec![2],
            vec![1, 1],
            vec![2, 1],
            vec![2, 2],
            vec![3, 2],
            vec![1, 1, 1],
            vec![2, 2, 1],
            vec![0, 2],
            vec![0, 0],
        ] {
            assert_eq!(
                word_derangement_count(&content),
                word_derangement_brute(&content),
                "content {content:?}"
            );
        }
        assert_eq!(word_derangement_count(&[2, 2]), BigInt::from(1));
    }

    #[test]
    fn idempotent_word_matches_the_worked_example() {
        // Books (1, 2) with copy sets {1,3} and {2,3,5} give the product
        // d1_3 d1_1 d2_5 d2_3 d2_2.
        let spec = ToomFixedSpec::uniform(vec![3, 5]).unwrap();
        let word = toom_fixed_idempotent_word(&spec, &[vec![1, 3], vec![2, 3, 5]]);
        let names: Vec<usize> = vec![
            spec.generator_index(1, 3),
            spec.generator_index(1, 1),
            spec.generator_index(2, 5),
            spec.generator_index(2, 3),
            spec.generator_index(2, 2),
        ];
        assert_eq!(word, names);
    }

    #[test]
    fn fixed_idempotent_fixed_points_match_closed_form() {
        let spec = spec22();
        let gens = toom_fixed_generators(&spec).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        for subsets in subset_tuples(&spec.content) {
            let word = toom_fixed_idempotent_word(&spec, &subsets);
            let e = m.eval_word(&word);
            assert!(m.is_idempotent(e), "subsets {subsets:?}");
            let direct = m.elements[e].fixed_point_count();
            let closed = toom_fixed_fixed_point_count(&spec, &subsets);
            assert_eq!(BigInt::from(direct), closed, "subsets {subsets:?}");
        }
    }

    #[test]
    fn fixed_spectrum_of_2_2_matches_the_known_list() {
        let spec = spec22();
        let entries = toom_fixed_spectrum(&spec);
        let mut nonzero: Vec<(Rat, BigInt)> = entries
            .iter()
            .filter(|e| !e.multiplicity.is_zero())
            .map(|e| (e.lambda.clone(), e.multiplicity.clone()))
            .collect();
        nonzero.sort();
        let mut expected = vec![
            (rat(1, 1), BigInt::one()),
            (rat(1, 10) + rat(3, 10), BigInt::one()),
            (rat(1, 10) + rat(2, 5), BigInt::one()),
            (rat(1, 5) + rat(3, 10), BigInt::one()),
            (rat(1, 5) + rat(2, 5), BigInt::one()),
            (rat(0, 1), BigInt::one()),
        ];
        expected.sort();
        assert_eq!(nonzero, expected);
        let total: BigInt = entries.iter().map(|e| e.multiplicity.clone()).sum();
        assert_eq!(total, BigInt::from(6));
    }

    #[test]
    fn reset_word_resets_every_state() {
        let spec = spec22();
        let gens = toom_fixed_generators(&spec).unwrap();
        let states = words_of_content(&spec.content);
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        for target in &states {
            let word = toom_fixed_reset_word(&spec, target);
            let e = m.eval_word(&word);
            let t = &m.elements[e];
            let target_idx = states.iter().position(|w| w == target).unwrap();
            for s in 0..states.len() {
                assert_eq!(t.apply(s), target_idx, "target {target:?}");
            }
        }
    }

    #[test]
    fn loan_reset_word_resets_every_state() {
        let spec = ToomLoanSpec::uniform(2, 3).unwrap();
        let gens = toom_loan_generators(&spec).unwrap();
        let states = all_words(spec.books, spec.shelf);
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        for target in states.iter().step_by(3) {
            let word = toom_loan_reset_word(&spec, target);
            let e = m.eval_word(&word);
            let t = &m.elements[e];
            let target_idx = states.iter().position(|w| w == target).unwrap();
            for s in 0..states.len() {
                assert_eq!(t.apply(s), target_idx, "target {target:?}");
            }
        }
    }

    #[test]
    fn loan_fixed_point_counts_match_direct_application() {
        let spec = ToomLoanSpec::uniform(2, 2).unwrap();
        let gens = toom_loan_generators(&spec).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        let limits = vec![spec.shelf as u64; spec.books];
        for subsets in subset_tuples(&limits) {
            let word = toom_loan_idempotent_word(&spec, &subsets);
            let e = m.eval_word(&word);
            assert!(m.is_idempotent(e), "subsets {subsets:?}");
            let direct = m.elements[e].fixed_point_count();
            let closed = toom_loan_fixed_point_count(&spec, &subsets);
            assert_eq!(BigInt::from(direct), closed, "subsets {subsets:?}");
        }
    }

    #[test]
    fn loan_spectrum_of_2_2_matches_the_known_list() {
        let spec = ToomLoanSpec::new(
            2,
            2,
            vec![
                vec![rat(1, 10), rat(1, 5)],
                vec![rat(3, 10), rat(2, 5)],
            ],
        )
        .unwrap();
        let entries = toom_loan_spectrum(&spec);
        let mut nonzero: Vec<(Rat, BigInt)> = entries
            .iter()
            .filter(|e| !e.multiplicity.is_zero())
            .map(|e| (e.lambda.clone(), e.multiplicity.clone()))
            .collect();
        nonzero.sort();
        let mut expected = vec![
            (rat(1, 1), BigInt::one()),
            (rat(1, 10) + rat(2, 5), BigInt::one()),
            (rat(1, 5) + rat(2, 5), BigInt::one()),
            (rat(1, 5) + rat(3, 10), BigInt::one()),
        ];
        expected.sort();
        assert_eq!(nonzero, expected);
        let total: BigInt = entries.iter().map(|e| e.multiplicity.clone()).sum();
        assert_eq!(total, BigInt::from(4));
    }

    #[test]
    fn derangement_inversion_identity() {
        // Summing derangements of leftover contents over all subset tuples
        // recovers the multinomial coefficient.
        for content in [vec![2, 2], vec![3, 1], vec![2, 1, 1]] {
            let mut total = BigInt::zero();
            for subsets in subset_tuples(&content) {
                let rest: Vec<u64> = content
                    .iter()
                    .zip(&subsets)
                    .map(|(&n, s)| n - s.len() as u64)
                    .collect();
                total += word_derangement_count(&rest);
            }
            assert_eq!(total, multinomial(&content), "content {content:?}");
        }
    }

    #[test]
    fn conjecture_sweep_covers_all_proper_tuples() {
        let report = check_interlibrary_conjecture(2, 2, 1_000_000).unwrap();
        // 3 proper subsets of a 2-element set per book
        assert_eq!(report.entries.len(), 9);
        assert_eq!(report.mismatches, 0);
        assert!(matches!(
            check_interlibrary_conjecture(2, 2, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
