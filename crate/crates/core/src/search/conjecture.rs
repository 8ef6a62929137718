use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::Factorizer;
use crate::arith;
use crate::catalog::{is_small_mersenne, M1, M2, M2_BAR, M3, M3_BAR};
use crate::divisors::{sigma_of, sigma_prime_power};
use crate::error::{Error, Result};
use crate::mersenne::{enumerate_mersenne, mersenne_pair_of, MersennePair};
use crate::poly::Poly;

pub const MAX_SCAN_DEGREE: usize = 64;
pub const MAX_SCAN_H: u32 = 512;

/// A clause under which `σ(M^{2h})` is known to have a non-Mersenne prime
/// factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HypothesisTag {
    /// `M` is `M1`, `M3` or `M̄3`.
    SmallMersenne,
    /// `M` is `M2` or `M̄2` and `h >= 2`.
    M2AtLeastTwo,
    /// `M` is outside the small set and `p | 2h+1` is a Mersenne number other than 7.
    MersenneNumberDivisor { p: u64 },
    /// `M` is outside the small set and `8 | ord_p(2)` for some `p | 2h+1`.
    OrderDivisibleBy8 { p: u64 },
}

impl fmt::Display for HypothesisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisTag::SmallMersenne => f.write_str("small-mersenne"),
            HypothesisTag::M2AtLeastTwo => f.write_str("m2-h-ge-2"),
            HypothesisTag::MersenneNumberDivisor { p } => write!(f, "mersenne-divisor:{p}"),
            HypothesisTag::OrderDivisibleBy8 { p } => write!(f, "ord8-divisor:{p}"),
        }
    }
}

impl Serialize for HypothesisTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The clauses covering `(M, h)`; empty means uncovered.
pub fn hypothesis_tags(m: MersennePair, h: u32) -> Vec<HypothesisTag> {
    let mut tags = Vec::new();
    if [M1, M3, M3_BAR].contains(&m) {
        tags.push(HypothesisTag::SmallMersenne);
    }
    if [M2, M2_BAR].contains(&m) && h >= 2 {
        tags.push(HypothesisTag::M2AtLeastTwo);
    }
    if is_small_mersenne(m) {
        return tags;
    }
    let n = 2 * h as u64 + 1;
    for (p, _) in arith::factor_int(n).expect("2h+1 is positive") {
        if p != 7 && arith::mersenne_exponent(p).is_some() {
            tags.push(HypothesisTag::MersenneNumberDivisor { p });
        }
        if arith::ord2(p).expect("odd prime") % 8 == 0 {
            tags.push(HypothesisTag::OrderDivisibleBy8 { p });
        }
    }
    tags
}

/// `(M2, 1)` and `(M̄2, 1)`, where `σ(M^2) = M1 M̄3` or its conjugate.
pub fn is_known_exception(m: MersennePair, h: u32) -> bool {
    h == 1 && [M2, M2_BAR].contains(&m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaFactor {
    pub poly: Poly,
    pub multiplicity: u32,
    pub mersenne: Option<MersennePair>,
}

/// The factorization of `σ(M^{2h})` and what it implies for
/// `U_{2h} = σ(σ(M^{2h}))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    #[serde(flatten)]
    pub pair: MersennePair,
    pub h: u32,
    pub squarefree: bool,
    pub all_mersenne: bool,
    pub u_splits: bool,
    pub u_square: bool,
    pub known_exception: bool,
    pub hypothesis_tags: Vec<HypothesisTag>,
    pub sigma_factors: Vec<SigmaFactor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SigmaReport {
    pub fn is_covered(&self) -> bool {
        !self.hypothesis_tags.is_empty()
    }

    /// An all-Mersenne factorization inside a covered case, other than the
    /// known exception.
    pub fn is_violation(&self) -> bool {
        self.all_mersenne && self.is_covered() && !self.known_exception
    }
}

pub fn scan_pair(m: MersennePair, h: u32, factorizer: &dyn Factorizer) -> SigmaReport {
    let mut report = SigmaReport {
        pair: m,
        h,
        squarefree: false,
        all_mersenne: false,
        u_splits: false,
        u_square: false,
        known_exception: is_known_exception(m, h),
        hypothesis_tags: hypothesis_tags(m, h),
        sigma_factors: Vec::new(),
        error: None,
    };
    let s = sigma_prime_power(&m.poly(), 2 * h);
    let f = match factorizer.factorize(&s) {
        Ok(f) => f,
        Err(e) => {
            log::warn!("factoring sigma({m}^{}) failed: {e}", 2 * h);
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.sigma_factors = f
        .iter()
        .map(|(p, e)| SigmaFactor { poly: p.clone(), multiplicity: *e, mersenne: mersenne_pair_of(p) })
        .collect();
    report.squarefree = f.is_squarefree();
    report.all_mersenne = report.sigma_factors.iter().all(|s| s.mersenne.is_some());
    let u = sigma_of(&f);
    report.u_splits = u.splits().is_some();
    report.u_square = u.is_square();
    report
}

/// The Mersenne primes a scan visits, after checking both bounds.
pub fn scan_primes(max_m_degree: usize, max_h: u32) -> Result<Vec<MersennePair>> {
    if max_m_degree > MAX_SCAN_DEGREE {
        return Err(Error::OutOfRange { what: "max_m_degree", value: max_m_degree as u64 });
    }
    if max_h == 0 || max_h > MAX_SCAN_H {
        return Err(Error::OutOfRange { what: "max_h", value: max_h as u64 });
    }
    enumerate_mersenne(max_m_degree)
}

/// One report for every Mersenne prime of degree at most `max_m_degree` and
/// every `1 <= h <= max_h`, ordered by prime then `h`.
pub fn conjecture_scan(
    max_m_degree: usize,
    max_h: u32,
    factorizer: &dyn Factorizer,
) -> Result<Vec<SigmaReport>> {
    let jobs: Vec<(MersennePair, u32)> = scan_primes(max_m_degree, max_h)?
        .into_iter()
        .flat_map(|m| (1..=max_h).map(move |h| (m, h)))
        .collect();
    Ok(jobs.par_iter().map(|&(m, h)| scan_pair(m, h, factorizer)).collect())
}
