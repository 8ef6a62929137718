//! Integer-side number theory on `u64`: primality, factoring, Euler's totient,
//! the Möbius function and the multiplicative order of 2 modulo a prime.
//!
//! Primality uses Miller–Rabin with the first twelve primes as witnesses,
//! which is deterministic below 2^64. Factoring strips small primes by trial
//! division and splits what remains with Brent's variant of Pollard's rho.

use serde::Serialize;

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u64 = 1 << 10;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as sorted `(prime, exponent)` pairs; `factor_int(1)` is empty.
pub fn factor_int(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "factor_int argument", value: 0 });
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p < TRIAL_LIMIT && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(n / d, out);
}

/// One Brent cycle-finding run with `f(y) = y^2 + c`; `None` on failure.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |y: u64| (mul_mod(y, y, n) + c) % n;
    let batch = 128;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut x;
    let mut ys;
    let mut g;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        loop {
            ys = y;
            for _ in 0..batch.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += batch;
            if k >= r || g != 1 {
                break;
            }
        }
        r *= 2;
        if g != 1 {
            break;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g != 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Euler's totient.
pub fn phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::OutOfRange { what: "phi argument", value: 0 });
    }
    Ok(factor_int(m)?.iter().fold(m, |acc, &(p, _)| acc / p * (p - 1)))
}

pub fn moebius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::OutOfRange { what: "moebius argument", value: 0 });
    }
    let f = factor_int(m)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut out = vec![1u64];
    for (p, e) in factor_int(n)? {
        let current = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Multiplicative order of 2 modulo the odd prime `p`.
///
/// Starts from `p - 1` and strips every prime factor `q` for which `2^(k/q)`
/// is still 1.
pub fn ord2(p: u64) -> Result<u64> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut order = p - 1;
    for (q, _) in factor_int(p - 1)? {
        while order % q == 0 && pow_mod(2, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeProfile {
    pub p: u64,
    pub ord2: u64,
    /// `p = 2^m - 1` for some `m`.
    pub is_mersenne_number: bool,
    /// `p = 2^(2^w) + 1` for some `w >= 0`.
    pub is_fermat_prime: bool,
}

pub fn classify_prime(p: u64) -> Result<PrimeProfile> {
    let ord2 = ord2(p)?;
    let is_mersenne_number = p.checked_add(1).is_some_and(u64::is_power_of_two);
    let is_fermat_prime = (p - 1).is_power_of_two() && (p - 1).trailing_zeros().is_power_of_two();
    Ok(PrimeProfile { p, ord2, is_mersenne_number, is_fermat_prime })
}

/// The exponent `m` when `n = 2^m - 1`.
pub fn mersenne_exponent(n: u64) -> Option<u32> {
    if n == u64::MAX {
        return Some(64);
    }
    (n + 1).is_power_of_two().then(|| (n + 1).trailing_zeros())
}
