//! Independent reference implementations on `u64`-packed polynomials of
//! degree below 64. Nothing here calls into the library under test.

#![allow(dead_code)]

pub fn deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

pub fn mul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            acc ^= (a as u128) << i;
        }
    }
    acc
}

/// Product that must fit in 64 bits.
pub fn mul64(a: u64, b: u64) -> u64 {
    let p = mul(a, b);
    assert!(p >> 64 == 0, "product overflows 64 bits");
    p as u64
}

pub fn divrem(mut a: u64, b: u64) -> (u64, u64) {
    assert!(b != 0);
    let db = deg(b);
    let mut q = 0;
    while a != 0 && deg(a) >= db {
        let s = deg(a) - db;
        q |= 1 << s;
        a ^= b << s;
    }
    (q, a)
}

pub fn divides(d: u64, a: u64) -> bool {
    divrem(a, d).1 == 0
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, divrem(a, b).1);
    }
    a
}

pub fn pow(a: u64, e: u32) -> u64 {
    (0..e).fold(1, |acc, _| mul64(acc, a))
}

pub fn conj(a: u64) -> u64 {
    // Σ a_i (x+1)^i by Horner.
    let mut acc = 0u64;
    for i in (0..64).rev() {
        acc = mul64(acc, 0b11);
        acc ^= a >> i & 1;
    }
    acc
}

pub fn is_irreducible(p: u64) -> bool {
    let d = deg(p);
    if d < 1 {
        return false;
    }
    let mut q = 2u64;
    while 2 * deg(q) <= d {
        if divides(q, p) {
            return false;
        }
        q += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, multiplicity)`.
pub fn factor(mut a: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while deg(a) > 0 {
        if 2 * deg(q) > deg(a) {
            out.push((a, 1));
            break;
        }
        let mut e = 0;
        while divides(q, a) {
            a = divrem(a, q).0;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    let mut merged: Vec<(u64, u32)> = Vec::new();
    out.sort();
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

/// σ by enumerating every candidate divisor.
pub fn sigma_brute(a: u64) -> u64 {
    (1..=a).filter(|&d| deg(d) <= deg(a) && divides(d, a)).fold(0, |acc, d| acc ^ d)
}

/// σ* by enumerating every candidate divisor.
pub fn sigma_star_brute(a: u64) -> u64 {
    (1..=a)
        .filter(|&d| deg(d) <= deg(a) && divides(d, a) && gcd(d, divrem(a, d).0) == 1)
        .fold(0, |acc, d| acc ^ d)
}

/// σ* through trial-division factoring, for larger degrees.
pub fn sigma_star_factored(a: u64) -> u64 {
    factor(a).into_iter().fold(1, |acc, (p, e)| mul64(acc, pow(p, e) ^ 1))
}

/// `(a, b)` when `p = 1 + x^a (x+1)^b` with `a, b >= 1` and `p` irreducible.
pub fn mersenne_shape(p: u64) -> Option<(u32, u32)> {
    if deg(p) < 2 || !is_irreducible(p) {
        return None;
    }
    let mut rest = p ^ 1;
    let a = rest.trailing_zeros();
    rest >>= a;
    let mut b = 0;
    while rest != 1 {
        if !divides(0b11, rest) {
            return None;
        }
        rest = divrem(rest, 0b11).0;
        b += 1;
    }
    (a >= 1 && b >= 1).then_some((a, b))
}

/// Divisible by `x` or `x+1`, with every other prime factor a Mersenne prime.
pub fn eligible(a: u64) -> bool {
    if a < 2 || !(a & 1 == 0 || divides(0b11, a)) {
        return false;
    }
    factor(a).into_iter().all(|(p, _)| p == 0b10 || p == 0b11 || mersenne_shape(p).is_some())
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| num_gcd(k, n) == 1).count() as u64
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of irreducibles of degree `m` by direct testing.
pub fn count_irreducible_brute(m: u32) -> u64 {
    ((1u64 << m)..(1u64 << (m + 1))).filter(|&p| is_irreducible(p)).count() as u64
}

pub fn ord2_brute(p: u64) -> u64 {
    let mut k = 1;
    let mut v = 2 % p;
    while v != 1 {
        v = v * 2 % p;
        k += 1;
    }
    k
}

#[test]
fn oracle_self_check() {
    // σ(x(x+1)) = (x+1)x and σ(x^2) = x^2+x+1.
    assert_eq!(sigma_brute(0b110), 0b110);
    assert_eq!(sigma_brute(0b100), 0b111);
    assert_eq!(conj(0b1011), 0b1101);
    assert_eq!(mersenne_shape(0b11001), Some((3, 1)));
    assert_eq!(mersenne_shape(0b10011), None);
    assert_eq!(count_irreducible_brute(4), 3);
}
