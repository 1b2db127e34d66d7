//! Monte Carlo simulation of the walks, used as an independent statistical
//! check against the exact formulas.

use crate::action::ActionTable;
use crate::error::Result;
use crate::green::GreenStructure;
use crate::monoid::FiniteMonoid;
use crate::prob::ProbabilityAssignment;
use crate::ratio::{rat_to_f64, Rat};
use crate::rng::{sample_index, thresholds_from_cumulative, Xoshiro256StarStar};

/// Cumulative sampling table over the support of a probability assignment.
struct SupportSampler {
    elements: Vec<usize>,
    thresholds: Vec<u128>,
}

impl SupportSampler {
    fn new(p: &ProbabilityAssignment) -> Self {
        let elements: Vec<usize> = p.support().to_vec();
        let mut cums: Vec<Rat> = Vec::with_capacity(elements.len());
        let mut acc = Rat::from_integer(0.into());
        for &e in &elements {
            acc += p.prob(e);
            cums.push(acc.clone());
        }
        SupportSampler {
            elements,
            thresholds: thresholds_from_cumulative(&cums),
        }
    }

    fn draw(&self, rng: &mut Xoshiro256StarStar) -> usize {
        self.elements[sample_index(rng, &self.thresholds)]
    }
}

/// Empirical distribution of the state walk after `steps` steps, over
/// `trials` independent trials from `start`.
pub fn simulate_state_distribution(
    action: &ActionTable,
    p: &ProbabilityAssignment,
    start: usize,
    steps: usize,
    trials: u64,
    seed: u64,
) -> Vec<f64> {
    let sampler = SupportSampler::new(p);
    let mut counts = vec![0u64; action.size()];
    for trial in 0..trials {
        let mut rng = Xoshiro256StarStar::for_trial(seed, trial);
        let mut s = start;
        for _ in 0..steps {
            let m = sampler.draw(&mut rng);
            s = action.apply[m][s];
        }
        counts[s] += 1;
    }
    counts.iter().map(|&c| c as f64 / trials as f64).collect()
}

pub struct AbsorptionStats {
    pub mean: f64,
    pub standard_error: f64,
    /// Empirical absorption distribution over monoid elements.
    pub hits: Vec<f64>,
}

/// Simulates the right walk from the identity until it enters the minimal
/// ideal; reports the absorption time statistics and landing distribution.
pub fn simulate_absorption(
    m: &FiniteMonoid,
    green: &GreenStructure,
    p: &ProbabilityAssignment,
    trials: u64,
    seed: u64,
    max_steps: u64,
) -> AbsorptionStats {
    let sampler = SupportSampler::new(p);
    let mut in_ideal = vec![false; m.size()];
    for &v in &green.minimal_ideal {
        in_ideal[v] = true;
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut hits = vec![0u64; m.size()];
    for trial in 0..trials {
        let mut rng = Xoshiro256StarStar::for_trial(seed, trial);
        let mut x = 0usize;
        let mut t = 0u64;
        while !in_ideal[x] && t < max_steps {
            x = m.product(x, sampler.draw(&mut rng));
            t += 1;
        }
        hits[x] += 1;
        let tf = t as f64;
        sum += tf;
        sum_sq += tf * tf;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    AbsorptionStats {
        mean,
        standard_error: (var / n).sqrt(),
        hits: hits.iter().map(|&c| c as f64 / n).collect(),
    }
}

/// Direct simulation of the generalized coupon collector: draws coupons
/// with probabilities `p` until `j[i]` copies of each coupon i are held.
pub fn simulate_coupon_collector(
    j: &[u64],
    p: &[Rat],
    trials: u64,
    seed: u64,
) -> Result<AbsorptionStats> {
    if j.len() != p.len() {
        return Err(crate::error::Error::DimensionMismatch(format!(
            "{} quotas for {} probabilities",
            j.len(),
            p.len()
        )));
    }
    let mut cums: Vec<Rat> = Vec::with_capacity(p.len());
    let mut acc = Rat::from_integer(0.into());
    for x in p {
        acc += x;
        cums.push(acc.clone());
    }
    if rat_to_f64(&acc) != 1.0 {
        return Err(crate::error::Error::NotStochastic(
            "coupon probabilities must sum to 1".into(),
        ));
    }
    let thresholds = thresholds_from_cumulative(&cums);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut rng = Xoshiro256StarStar::for_trial(seed, trial);
        let mut have = vec![0u64; j.len()];
        let mut missing = j.iter().filter(|&&q| q > 0).count();
        let mut t = 0u64;
        while missing > 0 {
            let i = sample_index(&mut rng, &thresholds);
            t += 1;
            have[i] += 1;
            if have[i] == j[i] {
                missing -= 1;
            }
        }
        let tf = t as f64;
        sum += tf;
        sum_sq += tf * tf;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    Ok(AbsorptionStats {
        mean,
        standard_error: (var / n).sqrt(),
        hits: Vec::new(),
    })
}

/// Total variation distance between an empirical (float) distribution and
/// an exact one.
pub fn empirical_tv(empirical: &[f64], exact: &[Rat]) -> f64 {
    empirical
        .iter()
        .zip(exact)
        .map(|(e, x)| (e - rat_to_f64(x)).abs())
        .sum::<f64>()
        / 2.0
}
