//! Probability assignments on monoid elements.

use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::monoid::FiniteMonoid;
use crate::ratio::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An exact probability distribution on the elements of a closed monoid.
#[derive(Clone, Debug)]
pub struct ProbabilityAssignment {
    /// weight per element index (most are zero).
    weights: Vec<Rat>,
    /// element indices with positive weight, sorted.
    support: Vec<usize>,
}

/// Built-in weighting schemes for generator-driven walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbabilityScheme {
    Uniform,
    /// Weight 2^i / (2^k - 1) on the i-th distinct generator: all subset
    /// sums are distinct, which makes eigenvalue collisions impossible
    /// unless forced structurally ("generic" probabilities).
    Powers,
}

impl ProbabilityAssignment {
    /// Distribution concentrated on the generator images, one weight per
    /// listed generator (weights of generators with equal action are merged).
    pub fn on_generators(m: &FiniteMonoid, weights: &[Rat]) -> Result<Self> {
        if weights.len() != m.gens.maps.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} generators",
                weights.len(),
                m.gens.maps.len()
            )));
        }
        let mut w = vec![Rat::zero(); m.size()];
        for (gi, weight) in weights.iter().enumerate() {
            if weight < &Rat::zero() {
                return Err(Error::NotStochastic(format!(
                    "negative weight on generator '{}'",
                    m.gens.names[gi]
                )));
            }
            w[m.generator_elt[gi]] += weight;
        }
        Self::from_weights(w)
    }

    pub fn from_weights(weights: Vec<Rat>) -> Result<Self> {
        let total: Rat = weights.iter().sum();
        if total != Rat::one() {
            return Err(Error::NotStochastic(format!("weights sum to {total}")));
        }
        if weights.iter().any(|w| w < &Rat::zero()) {
            return Err(Error::NotStochastic("negative weight".into()));
        }
        let support = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, _)| i)
            .collect();
        Ok(ProbabilityAssignment { weights, support })
    }

    pub fn scheme_on_generators(m: &FiniteMonoid, scheme: ProbabilityScheme) -> Result<Self> {
        // distinct generator images, in first-occurrence order
        let mut distinct: Vec<usize> = Vec::new();
        for &e in &m.generator_elt {
            if !distinct.contains(&e) {
                distinct.push(e);
            }
        }
        let k = distinct.len();
        let mut w = vec![Rat::zero(); m.size()];
        match scheme {
            ProbabilityScheme::Uniform => {
                for &e in &distinct {
                    w[e] += Rat::new(BigInt::one(), BigInt::from(k));
                }
            }
            ProbabilityScheme::Powers => {
                let denom = (BigInt::one() << k) - BigInt::one();
                for (i, &e) in distinct.iter().enumerate() {
                    w[e] += Rat::new(BigInt::one() << i, denom.clone());
                }
            }
        }
        Self::from_weights(w)
    }

    pub fn prob(&self, element: usize) -> &Rat {
        &self.weights[element]
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The submonoid generated by the support (element indices, sorted).
    pub fn support_closure(&self, m: &FiniteMonoid) -> Vec<usize> {
        let mut seen = vec![false; m.size()];
        seen[0] = true;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &s in &self.support {
                let y = m.product(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        // the generated submonoid contains 1 by convention; the products
        // x*s above sweep out everything reachable from it
        (0..m.size()).filter(|&x| seen[x]).collect()
    }

    /// Adapted: the support generates a submonoid containing the minimal
    /// ideal of M.
    pub fn is_adapted(&self, m: &FiniteMonoid, green: &GreenStructure) -> bool {
        let closure = self.support_closure(m);
        green
            .minimal_ideal
            .iter()
            .all(|v| closure.binary_search(v).is_ok())
    }

    pub fn require_adapted(&self, m: &FiniteMonoid, green: &GreenStructure) -> Result<()> {
        if self.is_adapted(m, green) {
            Ok(())
        } else {
            Err(Error::NotAdapted)
        }
    }

    /// Total weight, for sanity checks.
    pub fn total(&self) -> Rat {
        let mut t = rat_int(0);
        for w in &self.weights {
            t += w;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::transform::{GeneratorSet, StateSpace, Transformation};

    fn constants_monoid() -> FiniteMonoid {
        let gens = GeneratorSet::new(
            StateSpace::new(vec!["0".into(), "1".into()]),
            vec!["x".into(), "y".into()],
            vec![
                Transformation { targets: vec![0, 0] },
                Transformation { targets: vec![1, 1] },
            ],
        )
        .unwrap();
        FiniteMonoid::close(gens, 100).unwrap()
    }

    #[test]
    fn schemes_are_stochastic() {
        let m = constants_monoid();
        for scheme in [ProbabilityScheme::Uniform, ProbabilityScheme::Powers] {
            let p = ProbabilityAssignment::scheme_on_generators(&m, scheme).unwrap();
            assert_eq!(p.total(), rat(1, 1));
            assert_eq!(p.support().len(), 2);
        }
        let p = ProbabilityAssignment::scheme_on_generators(&m, ProbabilityScheme::Powers).unwrap();
        assert_eq!(p.prob(m.generator_elt[0]), &rat(1, 3));
        assert_eq!(p.prob(m.generator_elt[1]), &rat(2, 3));
    }

    #[test]
    fn adaptedness() {
        let m = constants_monoid();
        let green = GreenStructure::compute(&m);
        let full = ProbabilityAssignment::on_generators(&m, &[rat(1, 2), rat(1, 2)]).unwrap();
        assert!(full.is_adapted(&m, &green));
        let partial = ProbabilityAssignment::on_generators(&m, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert!(!partial.is_adapted(&m, &green));
    }

    #[test]
    fn rejects_non_stochastic() {
        let m = constants_monoid();
        assert!(ProbabilityAssignment::on_generators(&m, &[rat(1, 2), rat(1, 3)]).is_err());
        assert!(ProbabilityAssignment::on_generators(&m, &[rat(3, 2), rat(-1, 2)]).is_err());
    }
}
