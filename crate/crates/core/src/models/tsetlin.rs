//! The Tsetlin library: move-to-front dynamics on permutations of k books.

use crate::error::{Error, Result};
use crate::transform::{GeneratorSet, StateSpace, Transformation};
use itertools::Itertools;
use std::collections::HashMap;

fn book_letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

/// Move-to-front generators on the k! orderings of k books.
///
/// States are the permutations of the books listed lexicographically; the
/// generator for book b moves b to the front of the ordering.
pub fn tsetlin_generators(k: usize) -> Result<GeneratorSet> {
    if k == 0 || k > 8 {
        return Err(Error::InvalidInput(
            "tsetlin requires 1 <= k <= 8 books".into(),
        ));
    }
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let labels: Vec<String> = perms
        .iter()
        .map(|p| p.iter().map(|&b| book_letter(b)).collect())
        .collect();
    let index: HashMap<&Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut names = Vec::with_capacity(k);
    let mut maps = Vec::with_capacity(k);
    for b in 0..k {
        let mut targets = Vec::with_capacity(perms.len());
        for p in &perms {
            let mut moved = vec![b];
            moved.extend(p.iter().copied().filter(|&x| x != b));
            targets.push(index[&moved]);
        }
        names.push(book_letter(b).to_string());
        maps.push(Transformation { targets });
    }
    GeneratorSet::new(StateSpace::new(labels), names, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{is_left_regular_band, GreenStructure};
    use crate::monoid::{FiniteMonoid, DEFAULT_ELEMENT_CAP};

    #[test]
    fn one_book_gives_identity_only() {
        let gens = tsetlin_generators(1).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn two_books_close_to_three_elements() {
        let gens = tsetlin_generators(2).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.constant_elements().len(), 2);
    }

    #[test]
    fn image_is_a_left_regular_band() {
        let gens = tsetlin_generators(3).unwrap();
        let m = FiniteMonoid::close(gens, DEFAULT_ELEMENT_CAP).unwrap();
        let (lrb, witness) = is_left_regular_band(&m);
        assert!(lrb, "witness: {witness:?}");
        let green = GreenStructure::compute(&m);
        // Minimal ideal consists of the 6 constant maps onto the 6 states.
        assert_eq!(green.minimal_ideal.len(), 6);
    }

    #[test]
    fn move_to_front_acts_as_expected() {
        let gens = tsetlin_generators(3).unwrap();
        // State "bca" is at some index; moving "a" to the front gives "abc".
        let pos = |label: &str| {
            gens.states
                .labels
                .iter()
                .position(|l| l == label)
                .unwrap()
        };
        let a = &gens.maps[0];
        assert_eq!(a.apply(pos("bca")), pos("abc"));
        assert_eq!(a.apply(pos("abc")), pos("abc"));
    }
}
