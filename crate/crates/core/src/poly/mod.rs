//! Dense polynomials over GF(2).
//!
//! Coefficients are packed little-endian into `u64` words: bit `i` of the
//! packed sequence is the coefficient of `x^i`. The word vector never carries
//! trailing zero words, so the zero polynomial is the empty vector and
//! equality of polynomials is equality of their words.
//!
//! ```text
//! 0x7  -> x^2+x+1
//! 0xb  -> x^3+x+1
//! 0x19 -> x^4+x^3+1
//! ```

mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Rem};

use crate::error::{Error, Result};

pub use text::{format, parse, ParseError, Style};

const WORD: usize = 64;

/// A polynomial with coefficients in the two-element field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub const fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::from_u64(1)
    }

    pub fn x() -> Self {
        Poly::from_u64(0b10)
    }

    pub fn x_plus_one() -> Self {
        Poly::from_u64(0b11)
    }

    pub fn from_u64(bits: u64) -> Self {
        Poly::from_words(vec![bits])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Poly { words }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / WORD + 1];
        words[k / WORD] = 1 << (k % WORD);
        Poly { words }
    }

    /// Sum of `x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut words = Vec::new();
        for e in exponents {
            if words.len() <= e / WORD {
                words.resize(e / WORD + 1, 0);
            }
            words[e / WORD] ^= 1 << (e % WORD);
        }
        Poly::from_words(words)
    }

    /// `(x+1)^n`, built from Lucas' theorem: the coefficient of `x^i` is odd
    /// exactly when the bits of `i` are a subset of the bits of `n`.
    pub fn x_plus_one_pow(n: usize) -> Self {
        let mut words = vec![0u64; n / WORD + 1];
        let mut sub = n;
        loop {
            words[sub / WORD] |= 1 << (sub % WORD);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & n;
        }
        Poly { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The coefficient bits as a single word, when the degree is below 64.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - top.leading_zeros() as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| (w >> (i % WORD)) & 1 == 1)
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            (0..WORD).filter(move |k| (w >> k) & 1 == 1).map(move |k| j * WORD + k)
        })
    }

    /// Largest `k` with `x^k` dividing `self`; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        let (j, w) = self.words.iter().enumerate().find(|(_, w)| **w != 0)?;
        Some(j * WORD + w.trailing_zeros() as usize)
    }

    /// `self * x^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.words.len() + k / WORD + 1];
        xor_shifted(&mut out, &self.words, k);
        Poly::from_words(out)
    }

    /// `self / x^k`, dropping the low terms.
    pub fn shr(&self, k: usize) -> Poly {
        let (ws, bs) = (k / WORD, k % WORD);
        if ws >= self.words.len() {
            return Poly::zero();
        }
        let src = &self.words[ws..];
        let mut out = Vec::with_capacity(src.len());
        for i in 0..src.len() {
            let mut w = src[i] >> bs;
            if bs > 0 {
                if let Some(next) = src.get(i + 1) {
                    w |= next << (WORD - bs);
                }
            }
            out.push(w);
        }
        Poly::from_words(out)
    }

    pub fn square(&self) -> Poly {
        let mut out = Vec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            out.push(spread(w as u32));
            out.push(spread((w >> 32) as u32));
        }
        Poly::from_words(out)
    }

    /// Square-and-multiply power; `pow(0)` is one, also for the zero polynomial.
    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Euclidean division: `self = q * quot + rem` with `deg(rem) < deg(q)`.
    pub fn divrem(&self, q: &Poly) -> Result<(Poly, Poly)> {
        let dq = q.degree().ok_or(Error::DivisionByZero)?;
        let Some(dp) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if dp < dq {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; (dp - dq) / WORD + 1];
        for pos in (dq..=dp).rev() {
            if (rem[pos / WORD] >> (pos % WORD)) & 1 == 1 {
                let shift = pos - dq;
                quot[shift / WORD] |= 1 << (shift % WORD);
                xor_shifted(&mut rem, &q.words, shift);
            }
        }
        Ok((Poly::from_words(quot), Poly::from_words(rem)))
    }

    /// `self mod m`.
    pub fn reduce(&self, m: &Poly) -> Result<Poly> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let Some(dp) = self.degree() else {
            return Ok(Poly::zero());
        };
        if dp < dm {
            return Ok(self.clone());
        }
        let mut rem = self.words.clone();
        for pos in (dm..=dp).rev() {
            if (rem[pos / WORD] >> (pos % WORD)) & 1 == 1 {
                xor_shifted(&mut rem, &m.words, pos - dm);
            }
        }
        Ok(Poly::from_words(rem))
    }

    /// The quotient when `q` divides `self` exactly.
    pub fn exact_div(&self, q: &Poly) -> Option<Poly> {
        match self.divrem(q) {
            Ok((quot, rem)) if rem.is_zero() => Some(quot),
            _ => None,
        }
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.reduce(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.reduce(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub(crate) fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).reduce(m).expect("nonzero modulus")
    }

    pub(crate) fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.reduce(m).expect("nonzero modulus");
        let mut acc = Poly::one().reduce(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.square().reduce(m).expect("nonzero modulus");
            }
        }
        acc
    }

    /// `self(x + 1)`. An involutive ring automorphism.
    ///
    /// Uses `(x+1)^(2^k) = x^(2^k) + 1`: splitting the coefficients into
    /// blocks of size `2s`, the shifted polynomial is obtained by folding the
    /// upper half of every block into its lower half, for `s = 1, 2, 4, ...`.
    pub fn conjugate(&self) -> Poly {
        const MASKS: [(u32, u64); 6] = [
            (1, 0x5555_5555_5555_5555),
            (2, 0x3333_3333_3333_3333),
            (4, 0x0f0f_0f0f_0f0f_0f0f),
            (8, 0x00ff_00ff_00ff_00ff),
            (16, 0x0000_ffff_0000_ffff),
            (32, 0x0000_0000_ffff_ffff),
        ];
        let mut w = self.words.clone();
        for (s, mask) in MASKS {
            for word in &mut w {
                *word ^= (*word >> s) & mask;
            }
        }
        let mut s = 1;
        while s < w.len() {
            for base in (0..w.len()).step_by(2 * s) {
                for i in 0..s {
                    if base + s + i < w.len() {
                        w[base + i] ^= w[base + s + i];
                    }
                }
            }
            s *= 2;
        }
        Poly::from_words(w)
    }

    /// Formal derivative. Even-degree terms vanish in characteristic 2.
    pub fn derivative(&self) -> Poly {
        let odd: Vec<u64> = self.words.iter().map(|w| w & 0xaaaa_aaaa_aaaa_aaaa).collect();
        Poly::from_words(odd).shr(1)
    }

    /// True iff every term has an even exponent, i.e. `self = t^2`.
    pub fn is_square(&self) -> bool {
        self.words.iter().all(|w| w & 0xaaaa_aaaa_aaaa_aaaa == 0)
    }

    /// The `t` with `t^2 = self`, if `self` is a square.
    pub fn sqrt(&self) -> Option<Poly> {
        if !self.is_square() {
            return None;
        }
        let mut out = vec![0u64; self.words.len().div_ceil(2)];
        for (i, &w) in self.words.iter().enumerate() {
            out[i / 2] |= (compress(w) as u64) << (32 * (i % 2));
        }
        Some(Poly::from_words(out))
    }

    /// `Some((u, v))` when `self = x^u (x+1)^v`.
    pub fn splits(&self) -> Option<(usize, usize)> {
        let u = self.trailing_zeros()?;
        let rest = self.shr(u);
        let v = rest.degree()?;
        (rest == Poly::x_plus_one_pow(v)).then_some((u, v))
    }

    /// The coefficient of `x^(deg - l)`, i.e. coefficients read from the top.
    pub fn alpha(&self, l: usize) -> Result<bool> {
        let d = self.degree().ok_or(Error::ZeroPolynomial("alpha"))?;
        if l > d {
            return Err(Error::AlphaOutOfRange { index: l, degree: d });
        }
        Ok(self.coeff(d - l))
    }

    /// `0x`-prefixed hex with bit `i` the coefficient of `x^i`.
    pub fn to_hex(&self) -> String {
        let Some((top, rest)) = self.words.split_last() else {
            return "0x0".to_string();
        };
        let mut s = format!("0x{top:x}");
        for w in rest.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// `dst ^= src * x^shift`, ignoring bits that fall beyond `dst`.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / WORD, shift % WORD);
    for (i, &w) in src.iter().enumerate() {
        if i + ws >= dst.len() {
            break;
        }
        dst[i + ws] ^= w << bs;
        if bs > 0 && i + ws + 1 < dst.len() {
            dst[i + ws + 1] ^= w >> (WORD - bs);
        }
    }
}

fn mul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    for (j, &bw) in b.iter().enumerate() {
        let mut w = bw;
        while w != 0 {
            let k = w.trailing_zeros() as usize;
            w &= w - 1;
            if k == 0 {
                for (i, &aw) in a.iter().enumerate() {
                    out[i + j] ^= aw;
                }
            } else {
                for (i, &aw) in a.iter().enumerate() {
                    out[i + j] ^= aw << k;
                    out[i + j + 1] ^= aw >> (WORD - k);
                }
            }
        }
    }
    out
}

/// Interleaves zero bits: bit `i` moves to bit `2i`.
fn spread(w: u32) -> u64 {
    let mut x = w as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// Inverse of [`spread`] on the even bits.
fn compress(w: u64) -> u32 {
    let mut x = w & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    ((x | (x >> 16)) & 0xffff_ffff) as u32
}

/// Ordered by degree, then by the numeric value of the coefficient bits.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        trim(&mut self.words);
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::from_words(mul_words(&self.words, &rhs.words))
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

/// Panics on division by zero, like integer division.
impl Div<&Poly> for &Poly {
    type Output = Poly;
    fn div(self, rhs: &Poly) -> Poly {
        self.divrem(rhs).expect("division by the zero polynomial").0
    }
}

/// Panics on division by zero, like integer remainder.
impl Rem<&Poly> for &Poly {
    type Output = Poly;
    fn rem(self, rhs: &Poly) -> Poly {
        self.reduce(rhs).expect("division by the zero polynomial")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse(s)
    }
}

/// Serialized as the hex string of [`Poly::to_hex`].
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if !text.starts_with("0x") {
            return Err(serde::de::Error::custom("expected a 0x hex string"));
        }
        parse(&text).map_err(serde::de::Error::custom)
    }
}
