//! Deterministic random number generation for Monte Carlo checks.
//!
//! Streams are pinned: trial `t` of a simulation seeded with `seed` always
//! draws from a xoshiro256** generator whose four state words are outputs
//! `4t .. 4t+3` of the splitmix64 sequence started at `seed`. Results are
//! therefore reproducible across runs and platforms and independent trials
//! never share a stream.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 output for the `i`-th step of the sequence seeded with `seed`.
///
/// splitmix64 advances its state by a fixed increment, so the `i`-th output
/// is a closed form of `seed + (i+1) * GAMMA`.
fn splitmix64_at(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(GAMMA.wrapping_mul(i.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256** generator.
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    /// Generator for one simulation trial; see the module docs for the
    /// stream discipline.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let base = trial.wrapping_mul(4);
        let mut s = [
            splitmix64_at(seed, base),
            splitmix64_at(seed, base.wrapping_add(1)),
            splitmix64_at(seed, base.wrapping_add(2)),
            splitmix64_at(seed, base.wrapping_add(3)),
        ];
        if s == [0, 0, 0, 0] {
            // All-zero state is invalid for xoshiro; unreachable for the
            // splitmix derivation in practice but guarded anyway.
            s[0] = GAMMA;
        }
        Xoshiro256StarStar { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1]
            .wrapping_mul(5)
            .rotate_left(7)
            .wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }
}

/// Draws an index from a discrete distribution given by cumulative
/// thresholds scaled to 2^64 (see [`thresholds_from_cumulative`]).
pub fn sample_index(rng: &mut Xoshiro256StarStar, thresholds: &[u128]) -> usize {
    let r = rng.next_u64() as u128;
    for (i, t) in thresholds.iter().enumerate() {
        if r < *t {
            return i;
        }
    }
    thresholds.len() - 1
}

/// Converts exact cumulative probabilities c_1 <= ... <= c_k = 1 into
/// integer thresholds floor(c_i * 2^64). Sampling compares a raw u64 draw
/// against these, so the bias per draw is below 2^-64.
pub fn thresholds_from_cumulative(cums: &[crate::ratio::Rat]) -> Vec<u128> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let two64 = BigInt::from(1u8) << 64;
    cums.iter()
        .map(|c| {
            let scaled: BigInt = (c.numer() * &two64) / c.denom();
            scaled.to_u128().unwrap_or(u128::MAX)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of splitmix64 for seed 0 (state advances by
        // GAMMA before mixing, matching the original C reference).
        assert_eq!(splitmix64_at(0, 0), 0xE220A8397B1DCDAF);
        assert_eq!(splitmix64_at(0, 1), 0x6E789E6AA1B965F4);
        assert_eq!(splitmix64_at(0, 2), 0x06C45D188009454F);
    }

    #[test]
    fn trials_are_distinct_and_reproducible() {
        let mut a = Xoshiro256StarStar::for_trial(42, 0);
        let mut a2 = Xoshiro256StarStar::for_trial(42, 0);
        let mut b = Xoshiro256StarStar::for_trial(42, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xs2: Vec<u64> = (0..8).map(|_| a2.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, xs2);
        assert_ne!(xs, ys);
    }

    #[test]
    fn sampling_roughly_matches_weights() {
        use crate::ratio::rat;
        let cums = vec![rat(1, 4), rat(3, 4), rat(1, 1)];
        let thresholds = thresholds_from_cumulative(&cums);
        let mut rng = Xoshiro256StarStar::for_trial(7, 0);
        let mut counts = [0u64; 3];
        let n = 40_000;
        for _ in 0..n {
            counts[sample_index(&mut rng, &thresholds)] += 1;
        }
        let f = |c: u64| c as f64 / n as f64;
        assert!((f(counts[0]) - 0.25).abs() < 0.02);
        assert!((f(counts[1]) - 0.50).abs() < 0.02);
        assert!((f(counts[2]) - 0.25).abs() < 0.02);
    }
}
