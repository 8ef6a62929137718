//! Mersenne prime polynomials `1 + x^a (x+1)^b`, their enumeration, and
//! counts of irreducible polynomials.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::poly::Poly;

/// Exponent pair naming `1 + x^a (x+1)^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MersennePair {
    pub a: u32,
    pub b: u32,
}

impl MersennePair {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidPair { a, b });
        }
        Ok(MersennePair { a, b })
    }

    /// Like [`MersennePair::new`], additionally requiring irreducibility.
    pub fn prime(a: u32, b: u32) -> Result<Self> {
        let pair = MersennePair::new(a, b)?;
        if !is_irreducible(&pair.poly())? {
            return Err(Error::NotMersennePrime { a, b });
        }
        Ok(pair)
    }

    pub fn degree(&self) -> usize {
        (self.a + self.b) as usize
    }

    /// The pair of the conjugate polynomial.
    pub fn conjugate(&self) -> MersennePair {
        MersennePair { a: self.b, b: self.a }
    }

    pub fn poly(&self) -> Poly {
        mersenne_poly(*self)
    }
}

impl fmt::Display for MersennePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.a, self.b)
    }
}

pub fn mersenne_poly(m: MersennePair) -> Poly {
    Poly::x_plus_one_pow(m.b as usize).shl(m.a as usize) + Poly::one()
}

/// Mersenne primes of degree exactly `m`, ordered by `a`.
///
/// Only `a` coprime to `m` can give an irreducible polynomial, and the
/// conjugate pair `(m - a, a)` is irreducible together with `(a, m - a)`, so
/// only `a <= m / 2` is tested.
pub fn mersenne_slice(m: usize) -> Vec<MersennePair> {
    let mut out = Vec::new();
    for a in 1..=m / 2 {
        if arith::gcd(a as u64, m as u64) != 1 {
            continue;
        }
        let pair = MersennePair { a: a as u32, b: (m - a) as u32 };
        if is_irreducible(&pair.poly()).expect("nonconstant") {
            out.push(pair);
            if pair.a != pair.b {
                out.push(pair.conjugate());
            }
        }
    }
    out.sort_by_key(|p| p.a);
    out
}

/// All Mersenne primes of degree at most `max_degree`, grouped by degree.
pub fn enumerate_mersenne(max_degree: usize) -> Result<Vec<MersennePair>> {
    if max_degree < 2 {
        return Err(Error::OutOfRange { what: "max_degree", value: max_degree as u64 });
    }
    let slices: Vec<Vec<MersennePair>> = (2..=max_degree).into_par_iter().map(mersenne_slice).collect();
    Ok(slices.into_iter().flatten().collect())
}

/// The pair `(a, b)` when `p` is a Mersenne prime.
///
/// Decided structurally: `p + 1` must split as `x^a (x+1)^b` with both
/// exponents positive, and `p` must be irreducible.
pub fn mersenne_pair_of(p: &Poly) -> Option<MersennePair> {
    if p.degree().unwrap_or(0) < 2 {
        return None;
    }
    let (a, b) = (p + &Poly::one()).splits()?;
    if a == 0 || b == 0 {
        return None;
    }
    let pair = MersennePair { a: a as u32, b: b as u32 };
    is_irreducible(p).ok()?.then_some(pair)
}

pub fn is_mersenne_prime(p: &Poly) -> bool {
    mersenne_pair_of(p).is_some()
}

/// N₂(m), the number of monic irreducible polynomials of degree `m`, by the
/// necklace formula `(1/m) Σ_{d|m} μ(d) 2^(m/d)`.
pub fn count_irreducibles(m: usize) -> Result<u64> {
    if !(1..=64).contains(&m) {
        return Err(Error::OutOfRange { what: "degree", value: m as u64 });
    }
    let mut total: i128 = 0;
    for d in arith::divisors(m as u64)? {
        total += arith::moebius(d)? as i128 * (1i128 << (m as u64 / d));
    }
    Ok((total / m as i128) as u64)
}

/// `⌈(2^m − 2(2^(m/2) − 1)) / m⌉`, computed exactly also for odd `m`.
pub fn irreducible_count_lower_bound(m: usize) -> Result<u64> {
    if !(1..=64).contains(&m) {
        return Err(Error::OutOfRange { what: "degree", value: m as u64 });
    }
    let two_m = 1u128 << m;
    let md = m as u128;
    if m % 2 == 0 {
        // Numerator is an integer here.
        let num = two_m + 2 - (1u128 << (m / 2 + 1));
        Ok(num.div_ceil(md) as u64)
    } else {
        // 2 * 2^(m/2) = sqrt(2^(m+2)) is irrational. With k its floor, the
        // numerator lies strictly between N - 1 and N for N = 2^m + 2 - k.
        let k = isqrt(1u128 << (m + 2));
        let n = two_m + 2 - k;
        Ok(((n - 1) / md + 1) as u64)
    }
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: u32, b: u32) -> MersennePair {
        MersennePair { a, b }
    }

    #[test]
    fn mersenne_poly_examples() {
        assert_eq!(mersenne_poly(pair(1, 1)), "x^2+x+1".parse().unwrap());
        assert_eq!(mersenne_poly(pair(1, 2)), "x^3+x+1".parse().unwrap());
        assert_eq!(mersenne_poly(pair(3, 1)), "x^4+x^3+1".parse().unwrap());
        assert_eq!(mersenne_poly(pair(1, 3)), "x^4+x^3+x^2+x+1".parse().unwrap());
    }

    #[test]
    fn slices() {
        assert_eq!(mersenne_slice(2), vec![pair(1, 1)]);
        assert_eq!(mersenne_slice(3), vec![pair(1, 2), pair(2, 1)]);
        assert_eq!(mersenne_slice(4), vec![pair(1, 3), pair(3, 1)]);
        assert!(mersenne_slice(8).is_empty());
        assert!(mersenne_slice(5).contains(&pair(2, 3)));
    }

    #[test]
    fn mersenne_recognition() {
        let p = |s: &str| s.parse::<Poly>().unwrap();
        assert_eq!(mersenne_pair_of(&p("x^4+x^3+1")), Some(pair(3, 1)));
        assert_eq!(mersenne_pair_of(&p("x^4+x+1")), None);
        assert_eq!(mersenne_pair_of(&p("x^9+x^7+x^5+x+1")), None);
        assert_eq!(mersenne_pair_of(&p("x^6+x+1")), None);
        assert_eq!(mersenne_pair_of(&p("x+1")), None);
        assert_eq!(mersenne_pair_of(&p("x")), None);
        assert_eq!(mersenne_pair_of(&Poly::zero()), None);
        // x^5 + x + 1 has the Mersenne shape but is reducible
        assert_eq!(mersenne_pair_of(&p("x^5+x+1")), None);
    }

    #[test]
    fn pair_constructors() {
        assert!(MersennePair::new(0, 3).is_err());
        assert!(MersennePair::prime(1, 4).is_err());
        assert_eq!(MersennePair::prime(2, 3).unwrap(), pair(2, 3));
    }

    #[test]
    fn counts() {
        assert_eq!(count_irreducibles(1).unwrap(), 2);
        assert_eq!(count_irreducibles(2).unwrap(), 1);
        assert_eq!(count_irreducibles(4).unwrap(), 3);
        assert_eq!(count_irreducibles(7).unwrap(), 18);
        assert_eq!(count_irreducibles(64).unwrap(), 288_230_376_084_602_880);
        assert!(count_irreducibles(0).is_err());
        assert!(count_irreducibles(65).is_err());
    }

    #[test]
    fn lower_bound_matches_float_evaluation() {
        for m in 4..=40usize {
            let exact = irreducible_count_lower_bound(m).unwrap();
            let approx = (2f64.powi(m as i32) - 2.0 * (2f64.powf(m as f64 / 2.0) - 1.0)) / m as f64;
            assert_eq!(exact, approx.ceil() as u64, "m = {m}");
        }
    }
}
