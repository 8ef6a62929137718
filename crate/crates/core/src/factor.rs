//! Factorization over GF(2): squarefree decomposition, distinct-degree
//! splitting, and equal-degree splitting with the trace map, plus
//! irreducibility and multiplicative-order tests.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{parse, Poly};

/// Seed of the equal-degree splitting generator when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_f2a1_c0de_0002;

/// Largest degree for which [`poly_order`] factors `2^d - 1`.
pub const ORDER_DEGREE_BOUND: usize = 64;

/// Prime factors with multiplicities, in canonical order (degree, then
/// coefficient value).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Sorts the pairs and merges repeated primes. Irreducibility of the
    /// entries is the caller's responsibility.
    pub fn from_pairs(mut pairs: Vec<(Poly, u32)>) -> Self {
        pairs.retain(|(_, m)| *m > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<(Poly, u32)> = Vec::with_capacity(pairs.len());
        for (p, m) in pairs {
            match factors.last_mut() {
                Some((last, lm)) if *last == p => *lm += m,
                _ => factors.push((p, m)),
            }
        }
        Factorization { factors }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (Poly, u32)> {
        self.factors.iter()
    }

    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// ω: the number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, prime: &Poly) -> u32 {
        self.factors
            .binary_search_by(|(p, _)| p.cmp(prime))
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(p, m)| p.degree().unwrap_or(0) * *m as usize)
            .sum()
    }

    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (p, m)| acc * p.pow(*m as u64))
    }

    /// Merges two factorizations, adding multiplicities.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut pairs = self.factors.clone();
        pairs.extend(other.factors.iter().cloned());
        Factorization::from_pairs(pairs)
    }

    pub fn into_pairs(self) -> Vec<(Poly, u32)> {
        self.factors
    }
}

impl<'a> IntoIterator for &'a Factorization {
    type Item = &'a (Poly, u32);
    type IntoIter = std::slice::Iter<'a, (Poly, u32)>;
    fn into_iter(self) -> Self::IntoIter {
        self.factors.iter()
    }
}

/// `(x^2+x+1)·(x^4+x^3+1)`; `x` is left bare and multiplicities above one
/// are written as exponents.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if *p == Poly::x() {
                f.write_str("x")?;
            } else {
                write!(f, "({p})")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factorization({self})")
    }
}

/// Serialized as `[["0x7", 1], ["0x19", 1]]`.
impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.factors.len()))?;
        for (p, m) in &self.factors {
            seq.serialize_element(&(p.to_hex(), m))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(String, u32)> = Vec::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (hex, m) in raw {
            let p = parse(&hex).map_err(serde::de::Error::custom)?;
            pairs.push((p, m));
        }
        Ok(Factorization::from_pairs(pairs))
    }
}

/// Splits `p` into pairwise coprime squarefree parts with multiplicities,
/// sorted by multiplicity.
///
/// In characteristic 2 a zero derivative means `p` is a square, so the
/// leftover part after the gcd loop is handled by taking its square root and
/// recursing with doubled multiplicities.
pub fn squarefree_decompose(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree decomposition"));
    }
    let mut out = Vec::new();
    squarefree_into(p.clone(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn squarefree_into(p: Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
    if p.degree().unwrap_or(0) == 0 {
        return;
    }
    let dp = p.derivative();
    let mut repeated = if dp.is_zero() { p.clone() } else { p.gcd(&dp).expect("p nonzero") };
    let mut w = &p / &repeated;
    let mut k = 0;
    while w.degree().unwrap_or(0) > 0 {
        k += 1;
        let y = w.gcd(&repeated).expect("w nonzero");
        let part = &w / &y;
        if part.degree().unwrap_or(0) > 0 {
            out.push((part, k * scale));
        }
        repeated = &repeated / &y;
        w = y;
    }
    if repeated.degree().unwrap_or(0) > 0 {
        let root = repeated.sqrt().expect("remaining part is a square");
        squarefree_into(root, 2 * scale, out);
    }
}

/// Prime factors of the squarefree polynomial `p` grouped by degree: each
/// entry is the product of all prime factors of that degree.
pub fn distinct_degree(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    let mut h = Poly::x();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if deg < 2 * d {
            out.push((rest.clone(), deg));
            break;
        }
        h = h.square().reduce(&rest).expect("nonzero");
        let g = rest.gcd(&(&h + &Poly::x())).expect("nonzero");
        if g.degree().unwrap_or(0) > 0 {
            rest = &rest / &g;
            h = h.reduce(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct primes all of degree `d` with the trace map
/// `a + a^2 + ... + a^(2^(d-1))`, which lands in {0, 1} modulo each prime.
pub fn equal_degree<R: Rng>(p: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let mut done = Vec::new();
    let mut todo = vec![p.clone()];
    while let Some(f) = todo.pop() {
        let n = f.degree().unwrap_or(0);
        if n == d {
            done.push(f);
            continue;
        }
        if d == 1 && n == 2 {
            done.push(Poly::x());
            done.push(Poly::x_plus_one());
            continue;
        }
        loop {
            let a = random_below(n, rng);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut t = a.clone();
            let mut acc = a;
            for _ in 1..d {
                t = t.square().reduce(&f).expect("nonzero");
                acc += &t;
            }
            let g = f.gcd(&acc).expect("f nonzero");
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                todo.push(&f / &g);
                todo.push(g);
                break;
            }
        }
    }
    done.sort();
    done
}

fn random_below<R: Rng>(degree: usize, rng: &mut R) -> Poly {
    let words = degree.div_ceil(64);
    let mut w: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
    if degree % 64 != 0 {
        if let Some(top) = w.last_mut() {
            *top &= (1u64 << (degree % 64)) - 1;
        }
    }
    Poly::from_words(w)
}

/// Canonical complete factorization with the default splitting seed.
pub fn factorize(p: &Poly) -> Result<Factorization> {
    factorize_with_seed(p, DEFAULT_SEED)
}

pub fn factorize_with_seed(p: &Poly, seed: u64) -> Result<Factorization> {
    factorize_with_rng(p, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn factorize_with_rng<R: Rng>(p: &Poly, rng: &mut R) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("factorize"));
    }
    let mut pairs = Vec::new();
    for (part, mult) in squarefree_decompose(p)? {
        for (group, d) in distinct_degree(&part) {
            for prime in equal_degree(&group, d, rng) {
                pairs.push((prime, mult));
            }
        }
    }
    Ok(Factorization::from_pairs(pairs))
}

fn prime_divisors(n: usize) -> Vec<usize> {
    arith::factor_int(n as u64)
        .expect("n >= 1")
        .into_iter()
        .map(|(q, _)| q as usize)
        .collect()
}

/// Rabin's test: `x^(2^d) = x mod p`, and `gcd(x^(2^(d/q)) - x, p) = 1` for
/// every prime `q | d`. Non-squarefree inputs are rejected up front by a
/// derivative gcd.
pub fn is_irreducible(p: &Poly) -> Result<bool> {
    let d = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial("irreducibility test")),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    if !p.coeff(0) {
        return Ok(false);
    }
    let dp = p.derivative();
    if dp.is_zero() || !p.gcd(&dp)?.is_one() {
        return Ok(false);
    }
    let x = Poly::x();
    let mut frobenius = vec![x.clone()];
    for _ in 0..d {
        let next = frobenius.last().expect("nonempty").square().reduce(p)?;
        frobenius.push(next);
    }
    if frobenius[d] != x {
        return Ok(false);
    }
    for q in prime_divisors(d) {
        let g = p.gcd(&(&frobenius[d / q] + &x))?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicative order of `x` modulo the irreducible `p`, a divisor of
/// `2^d - 1`.
pub fn poly_order(p: &Poly) -> Result<u64> {
    if *p == Poly::x() {
        return Err(Error::OrderOfX);
    }
    if !is_irreducible(p)? {
        return Err(Error::Reducible(p.to_hex()));
    }
    let d = p.degree().expect("nonconstant");
    if d > ORDER_DEGREE_BOUND {
        return Err(Error::DegreeBound { degree: d, bound: ORDER_DEGREE_BOUND });
    }
    let group = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut order = group;
    let x = Poly::x();
    for (q, _) in arith::factor_int(group)? {
        while order % q == 0 && x.powmod(order / q, p).is_one() {
            order /= q;
        }
    }
    Ok(order)
}

pub fn is_primitive(p: &Poly) -> Result<bool> {
    let order = poly_order(p)?;
    let d = p.degree().expect("nonconstant");
    Ok(order == if d == 64 { u64::MAX } else { (1u64 << d) - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn f(pairs: &[(&str, u32)]) -> Factorization {
        Factorization::from_pairs(pairs.iter().map(|(s, m)| (p(s), *m)).collect())
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree_decompose(&p("x^2*(x+1)")).unwrap(),
            vec![(p("x+1"), 1), (p("x"), 2)]
        );
        assert_eq!(squarefree_decompose(&p("(x^3+x+1)^2")).unwrap(), vec![(p("x^3+x+1"), 2)]);
        let mixed = p("x^3*(x+1)^4*(x^2+x+1)^6*(x^4+x+1)");
        let parts = squarefree_decompose(&mixed).unwrap();
        let rebuilt = parts.iter().fold(Poly::one(), |acc, (q, m)| acc * q.pow(*m as u64));
        assert_eq!(rebuilt, mixed);
        assert!(squarefree_decompose(&Poly::zero()).is_err());
        assert!(squarefree_decompose(&Poly::one()).unwrap().is_empty());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p("x^4+x+1")).unwrap());
        assert!(!is_irreducible(&p("x^5+x^4+1")).unwrap());
        assert!(is_irreducible(&p("x^4+x^3+x^2+x+1")).unwrap());
        assert!(is_irreducible(&p("x")).unwrap());
        assert!(!is_irreducible(&p("x^2+1")).unwrap());
        assert!(!is_irreducible(&p("(x^2+x+1)^2")).unwrap());
        assert!(is_irreducible(&Poly::one()).is_err());
    }

    #[test]
    fn factorize_examples() {
        // 1 + M1 + M1^2
        assert_eq!(factorize(&p("x^4+x+1")).unwrap(), f(&[("x^4+x+1", 1)]));
        assert_eq!(
            factorize(&p("x^5+x^4+1")).unwrap(),
            f(&[("x^2+x+1", 1), ("x^3+x+1", 1)])
        );
        let t10 = p("x^2*(x+1)*(x^4+x+1)*(x^2+x+1)^2");
        let fact = factorize(&t10).unwrap();
        assert_eq!(
            fact,
            f(&[("x", 2), ("x+1", 1), ("x^2+x+1", 2), ("x^4+x+1", 1)])
        );
        assert_eq!(fact.to_string(), "x^2·(x+1)·(x^2+x+1)^2·(x^4+x+1)");
        assert!(factorize(&Poly::one()).unwrap().is_empty());
        assert!(factorize(&Poly::zero()).is_err());
    }

    #[test]
    fn factorize_is_seed_independent() {
        let a = p("(x^7+x+1)*(x^7+x^3+1)*(x^7+x^6+1)*(x^14+x^5+1)*x^3");
        let reference = factorize(&a).unwrap();
        for seed in 0..8 {
            assert_eq!(factorize_with_seed(&a, seed).unwrap(), reference);
        }
        assert_eq!(reference.product(), a);
    }

    #[test]
    fn order_examples() {
        assert_eq!(poly_order(&p("x^2+x+1")).unwrap(), 3);
        assert_eq!(poly_order(&p("x^4+x^3+x^2+x+1")).unwrap(), 5);
        assert_eq!(poly_order(&p("x^4+x+1")).unwrap(), 15);
        assert_eq!(poly_order(&p("x+1")).unwrap(), 1);
        assert!(is_primitive(&p("x^2+x+1")).unwrap());
        assert!(!is_primitive(&p("x^4+x^3+x^2+x+1")).unwrap());
        assert!(is_primitive(&p("x^4+x+1")).unwrap());
        assert_eq!(poly_order(&Poly::x()), Err(Error::OrderOfX));
        assert!(matches!(poly_order(&p("x^2+1")), Err(Error::Reducible(_))));
        let big = Poly::monomial(70) + p("x+1");
        assert!(poly_order(&big).is_err());
    }

    #[test]
    fn order_divides_group_order_for_degree_64() {
        // x^64 + x^4 + x^3 + x + 1 is a standard primitive pentanomial.
        let q = Poly::monomial(64) + p("x^4+x^3+x+1");
        assert!(is_irreducible(&q).unwrap());
        assert_eq!(poly_order(&q).unwrap(), u64::MAX);
    }

    #[test]
    fn serde_round_trip() {
        let fact = f(&[("x", 2), ("x^4+x^3+1", 1)]);
        let json = serde_json::to_string(&fact).unwrap();
        assert_eq!(json, r#"[["0x2",2],["0x19",1]]"#);
        let back: Factorization = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fact);
    }
}
