//! Exact rational arithmetic helpers.
//!
//! Everything spectral in this crate is computed over arbitrary-precision
//! rationals; floating point only appears in Monte Carlo summaries and the
//! optional decimal renderings of reports.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parses "p/q" or a bare integer "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational '{s}'")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational '{s}'")))?;
    if q.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
    }
    Ok(Rat::new(p, q))
}

/// Renders a rational as "p/q" (or "p" when the denominator is 1).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a quotient of truncated parts for extreme values.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Multinomial coefficient (sum(parts))! / prod(parts!).
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/3", "-2/7", "5", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(multinomial(&[2, 2]), BigInt::from(6));
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
    }
}
