//! Bounded searches over polynomials `x^a (x+1)^b ∏ P_i^{h_i}` whose odd
//! prime factors are Mersenne primes, and the scan of `σ(M^{2h})`.

mod conjecture;
mod perfect;
mod special;

use serde::Serialize;

use crate::divisors::{Mode, PerfectKind, Signature};
use crate::error::Result;
use crate::factor::{factorize_with_seed, Factorization, DEFAULT_SEED};
use crate::poly::Poly;

pub use conjecture::{
    conjecture_scan, hypothesis_tags, is_known_exception, scan_pair, scan_primes, HypothesisTag, SigmaFactor,
    SigmaReport,
};
pub use perfect::{search_perfect, search_perfect_with, PerfectSearch};
pub use special::{search_special_perfect, search_special_perfect_with, special_candidates};

/// Default bound on `max_degree` for the signature searches.
pub const DEFAULT_CAP: usize = 40;

/// Source of factorizations; lets callers put a cache in front of the
/// factoring routines.
pub trait Factorizer: Sync {
    fn factorize(&self, p: &Poly) -> Result<Factorization>;
}

/// Factoring with a fixed seed for the randomized splitting step.
#[derive(Debug, Clone, Copy)]
pub struct Seeded(pub u64);

impl Default for Seeded {
    fn default() -> Self {
        Seeded(DEFAULT_SEED)
    }
}

impl Factorizer for Seeded {
    fn factorize(&self, p: &Poly) -> Result<Factorization> {
        factorize_with_seed(p, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Skip prime powers whose divisor sum leaves the allowed prime set.
    /// Off means every signature in the degree bound is built and tested.
    pub prune: bool,
    pub cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, cap: DEFAULT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub polynomial: Poly,
    pub signature: Signature,
    pub mode: Mode,
    pub classification: PerfectKind,
    pub indecomposable: bool,
    /// The image under `x -> x+1`, itself a hit of the same search.
    pub conjugate: Poly,
}

impl SearchHit {
    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate == self.polynomial
    }
}
