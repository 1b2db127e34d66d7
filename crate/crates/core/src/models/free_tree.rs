//! The free tree monoid FT(X) on a totally ordered alphabet: generated by
//! idempotent letters subject to yxy = yx for x < y. Elements are reduced
//! words (no factor that repeats a letter with only smaller letters in
//! between), counted by a(0) = 1, a(n) = a(n-1)^2 + a(n-1).

use crate::error::{Error, Result};
use crate::transform::{GeneratorSet, StateSpace, Transformation};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::{HashMap, VecDeque};

/// Appends letter `x` to a reduced word, renormalizing in place.
///
/// Appending is a no-op exactly when the last occurrence of `x` is followed
/// only by strictly smaller letters, since then the new `x` completes a
/// factor x u x with u over smaller letters.
pub fn ft_append(reduced: &mut Vec<usize>, x: usize) {
    if let Some(pos) = reduced.iter().rposition(|&c| c == x) {
        if reduced[pos + 1..].iter().all(|&c| c < x) {
            return;
        }
    }
    reduced.push(x);
}

/// Normal form of an arbitrary word, folding letters left to right.
pub fn ft_reduce(word: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len());
    for &x in word {
        ft_append(&mut out, x);
    }
    out
}

pub fn ft_is_reduced(word: &[usize]) -> bool {
    ft_reduce(word) == word
}

/// All positions (i, j) where the rule "drop the second occurrence" applies:
/// word[i] == word[j] with only smaller letters strictly between.
pub fn ft_rewrites(word: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..word.len() {
        for i in (0..j).rev() {
            if word[i] == word[j] {
                if word[i + 1..j].iter().all(|&c| c < word[j]) {
                    out.push((i, j));
                }
                break;
            }
            if word[i] > word[j] {
                break;
            }
        }
    }
    out
}

/// Applies one rewrite from [`ft_rewrites`] by deleting position `j`.
pub fn ft_apply_rewrite(word: &[usize], rewrite: (usize, usize)) -> Vec<usize> {
    let mut out = word.to_vec();
    out.remove(rewrite.1);
    out
}

/// a(n): the number of reduced words over n letters.
pub fn ft_count(n: usize) -> BigInt {
    let mut a = BigInt::one();
    for _ in 0..n {
        a = &a * &a + &a;
    }
    a
}

/// Enumerates all reduced words over letters 1..=n, in length-then-lex
/// order. Refused for n >= 5, where the count 3263442+ is far past the
/// exact-analysis budget.
pub fn ft_enumerate(n: usize) -> Result<Vec<Vec<usize>>> {
    if n >= 5 {
        return Err(Error::BudgetExceeded {
            budget: 1806,
            unit: "reduced words",
        });
    }
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(Vec::new(), ());
    queue.push_back(Vec::new());
    while let Some(word) = queue.pop_front() {
        out.push(word.clone());
        for x in 1..=n {
            let mut next = word.clone();
            ft_append(&mut next, x);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

fn ft_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|x| x.to_string()).collect()
    }
}

/// FT(n) acting on its own reduced words by left multiplication; the
/// natural letter order doubles as the tree-monoid order.
pub fn ft_generators(n: usize) -> Result<GeneratorSet> {
    let states = ft_enumerate(n)?;
    let index: HashMap<&Vec<usize>, usize> =
        states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut names = Vec::new();
    let mut maps = Vec::new();
    for x in 1..=n {
        names.push(format!("x{x}"));
        let targets = states
            .iter()
            .map(|w| {
                let mut prod = vec![x];
                for &c in w {
                    ft_append(&mut prod, c);
                }
                index[&prod]
            })
            .collect();
        maps.push(Transformation { targets });
    }
    let labels = states.iter().map(|w| ft_label(w)).collect();
    let mut gens = GeneratorSet::new(StateSpace::new(labels), names, maps)?;
    gens.tree_order = Some((0..n).collect());
    Ok(gens)
}

/// Rooted tree with all leaves at depth 0 and the root at depth n: each
/// level is either a unary node or a binary node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Leaf,
    Unary(Box<TreeShape>),
    Binary(Box<TreeShape>, Box<TreeShape>),
}

/// Height of a shape, verifying that both children of every binary node
/// have equal height.
pub fn tree_height(tree: &TreeShape) -> Result<usize> {
    match tree {
        TreeShape::Leaf => Ok(0),
        TreeShape::Unary(c) => Ok(tree_height(c)? + 1),
        TreeShape::Binary(l, r) => {
            let hl = tree_height(l)?;
            let hr = tree_height(r)?;
            if hl != hr {
                return Err(Error::InvalidInput(
                    "binary node with children of unequal height".into(),
                ));
            }
            Ok(hl + 1)
        }
    }
}

pub fn tree_leaves(tree: &TreeShape) -> usize {
    match tree {
        TreeShape::Leaf => 1,
        TreeShape::Unary(c) => tree_leaves(c),
        TreeShape::Binary(l, r) => tree_leaves(l) + tree_leaves(r),
    }
}

/// The bijection from reduced words over 1..=n to trees of height n: split
/// at the unique occurrence of the largest letter if present, else add a
/// unary level.
pub fn ft_to_tree(word: &[usize], n: usize) -> Result<TreeShape> {
    if !ft_is_reduced(word) {
        return Err(Error::Precondition("word is not reduced".into()));
    }
    ft_to_tree_unchecked(word, n)
}

fn ft_to_tree_unchecked(word: &[usize], n: usize) -> Result<TreeShape> {
    if n == 0 {
        if !word.is_empty() {
            return Err(Error::InvalidInput("letter out of range".into()));
        }
        return Ok(TreeShape::Leaf);
    }
    match word.iter().position(|&c| c == n) {
        None => Ok(TreeShape::Unary(Box::new(ft_to_tree_unchecked(
            word,
            n - 1,
        )?))),
        Some(p) => Ok(TreeShape::Binary(
            Box::new(ft_to_tree_unchecked(&word[..p], n - 1)?),
            Box::new(ft_to_tree_unchecked(&word[p + 1..], n - 1)?),
        )),
    }
}

/// Inverse of [`ft_to_tree`]; the alphabet size is the tree height.
pub fn ft_from_tree(tree: &TreeShape) -> Result<Vec<usize>> {
    let n = tree_height(tree)?;
    let mut word = Vec::new();
    fn rec(tree: &TreeShape, level: usize, word: &mut Vec<usize>) {
        match tree {
            TreeShape::Leaf => {}
            TreeShape::Unary(c) => rec(c, level - 1, word),
            TreeShape::Binary(l, r) => {
                rec(l, level - 1, word);
                word.push(level);
                rec(r, level - 1, word);
            }
        }
    }
    rec(tree, n, &mut word);
    Ok(word)
}

/// Bracket rendering: leaves are "o", unary levels "(c)", binary "(l,r)".
pub fn tree_to_bracket(tree: &TreeShape) -> String {
    match tree {
        TreeShape::Leaf => "o".to_string(),
        TreeShape::Unary(c) => format!("({})", tree_to_bracket(c)),
        TreeShape::Binary(l, r) => {
            format!("({},{})", tree_to_bracket(l), tree_to_bracket(r))
        }
    }
}

/// DOT rendering for visualization.
pub fn tree_to_dot(tree: &TreeShape) -> String {
    let mut lines = vec!["digraph tree {".to_string()];
    let mut counter = 0usize;
    fn rec(tree: &TreeShape, counter: &mut usize, lines: &mut Vec<String>) -> usize {
        let id = *counter;
        *counter += 1;
        lines.push(format!("  n{id} [shape=point];"));
        match tree {
            TreeShape::Leaf => {}
            TreeShape::Unary(c) => {
                let cid = rec(c, counter, lines);
                lines.push(format!("  n{id} -> n{cid};"));
            }
            TreeShape::Binary(l, r) => {
                let lid = rec(l, counter, lines);
                let rid = rec(r, counter, lines);
                lines.push(format!("  n{id} -> n{lid};"));
                lines.push(format!("  n{id} -> n{rid};"));
            }
        }
        id
    }
    rec(tree, &mut counter, &mut lines);
    lines.push("}".to_string());
    lines.join("\n")
}

/// Left and right descent sets of a reduced word: the first letter, and the
/// letters whose last occurrence is followed only by smaller letters.
pub fn ft_descents(word: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let d_l = word.first().map(|&x| vec![x]).unwrap_or_default();
    let mut d_r = Vec::new();
    let mut max_after = 0;
    for &c in word.iter().rev() {
        if c > max_after {
            d_r.push(c);
            max_after = c;
        }
    }
    d_r.sort_unstable();
    (d_l, d_r)
}

/// Size of the right descent class of a subset I: the product of a(i-1)
/// over i in I.
pub fn ft_descent_class_size(descents: &[usize]) -> BigInt {
    descents.iter().map(|&i| ft_count(i - 1)).product()
}
