//! The named polynomials of the classification: the small Mersenne primes
//! `M_j = 1 + x(x+1)^j`, the perfect polynomials `T_1..T_11`, the unitary
//! perfect bases `U_1..U_9`, and the trivial families.

use crate::divisors::Signature;
use crate::mersenne::MersennePair;
use crate::poly::Poly;

pub const M1: MersennePair = MersennePair { a: 1, b: 1 };
pub const M2: MersennePair = MersennePair { a: 1, b: 2 };
pub const M2_BAR: MersennePair = MersennePair { a: 2, b: 1 };
pub const M3: MersennePair = MersennePair { a: 1, b: 3 };
pub const M3_BAR: MersennePair = MersennePair { a: 3, b: 1 };

/// `{M1, M2, M̄2, M3, M̄3}`: the Mersenne primes of degree at most 4.
pub const SMALL_MERSENNE: [MersennePair; 5] = [M1, M2, M2_BAR, M3, M3_BAR];

pub fn is_small_mersenne(m: MersennePair) -> bool {
    SMALL_MERSENNE.contains(&m)
}

fn sig(a: u32, b: u32, components: &[(MersennePair, u32)]) -> Signature {
    Signature::new(a, b, components.to_vec())
}

/// Signature of `T_i` for `i` in 1..=9; `T_10` and `T_11` carry the
/// non-Mersenne prime `x^4+x+1` and have no signature.
pub fn t_signature(i: usize) -> Option<Signature> {
    let base = match i {
        1 | 2 => sig(2, 1, &[(M1, 1)]),
        3 | 4 => sig(4, 3, &[(M3, 1)]),
        5 => sig(4, 4, &[(M3, 1), (M3_BAR, 1)]),
        6 | 7 => sig(6, 3, &[(M2, 1), (M2_BAR, 1)]),
        8 | 9 => sig(4, 6, &[(M2, 1), (M2_BAR, 1), (M3, 1)]),
        _ => return None,
    };
    Some(if matches!(i, 2 | 4 | 7 | 9) { base.conjugate() } else { base })
}

/// `T_i` for `i` in 1..=11.
pub fn t(i: usize) -> Option<Poly> {
    match i {
        10 | 11 => {
            let quartic = Poly::from_u64(0b10011);
            let t10 = Poly::from_u64(0b100) * Poly::x_plus_one() * quartic * M1.poly().square();
            Some(if i == 11 { t10.conjugate() } else { t10 })
        }
        _ => t_signature(i).map(|s| s.poly()),
    }
}

/// Signature of the unitary perfect base `U_j` for `j` in 1..=9.
pub fn u_signature(j: usize) -> Option<Signature> {
    Some(match j {
        1 => sig(3, 3, &[(M1, 2)]),
        2 => sig(3, 2, &[(M1, 1)]),
        3 => sig(5, 4, &[(M3, 1)]),
        4 => sig(7, 4, &[(M2, 1), (M2_BAR, 1)]),
        5 => sig(5, 6, &[(M1, 2), (M3, 1)]),
        6 => sig(5, 5, &[(M3, 1), (M3_BAR, 1)]),
        7 => sig(7, 7, &[(M2, 2), (M2_BAR, 2)]),
        8 => sig(7, 6, &[(M1, 2), (M2, 1), (M2_BAR, 1)]),
        9 => sig(7, 5, &[(M2, 1), (M2_BAR, 1), (M3_BAR, 1)]),
        _ => return None,
    })
}

pub fn u(j: usize) -> Option<Poly> {
    u_signature(j).map(|s| s.poly())
}

/// `(x^2+x)^(2^n - 1)`, the trivial perfect polynomials (`n >= 1`).
pub fn trivial_perfect(n: u32) -> Poly {
    Poly::from_u64(0b110).pow((1u64 << n) - 1)
}

/// `(x^2+x)^(2^n)`, the trivial unitary perfect polynomials.
pub fn trivial_unitary(n: u32) -> Poly {
    Poly::from_u64(0b110).pow(1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_polynomials() {
        assert_eq!(M1.poly(), "x^2+x+1".parse().unwrap());
        assert_eq!(M2.poly().conjugate(), M2_BAR.poly());
        assert_eq!(M3.poly().conjugate(), M3_BAR.poly());
        assert_eq!(t(2).unwrap(), t(1).unwrap().conjugate());
        assert_eq!(t(5).unwrap(), t(5).unwrap().conjugate());
        assert_eq!(t(11).unwrap(), t(10).unwrap().conjugate());
        assert_eq!(t(10).unwrap().degree(), Some(11));
        assert_eq!(u(6).unwrap(), "x^5*(x+1)^5*M(1,3)*M(3,1)".parse().unwrap());
        assert!(t(12).is_none() && u(0).is_none());
    }
}
