use std::collections::HashMap;
use std::ops::Range;

use log::debug;
use rayon::prelude::*;

use super::{Factorizer, SearchHit, SearchOptions, Seeded};
use crate::divisors::{classify_factored, is_indecomposable_factored, Mode, Signature};
use crate::error::{Error, Result};
use crate::mersenne::{enumerate_mersenne, MersennePair};
use crate::poly::Poly;

const X: usize = 0;
const X1: usize = 1;

/// A prime power `P^h` together with the exponent vector of its divisor sum
/// over the basis.
#[derive(Debug, Clone)]
struct Component {
    h: u32,
    sums: Vec<(usize, u32)>,
}

/// Precomputed state of one signature search.
///
/// The basis is `x`, `x+1`, then every Mersenne prime of degree below the
/// bound. Work is split into partitions, one per `(a, b)`, visited in
/// lexicographic order.
pub struct PerfectSearch {
    max_degree: usize,
    mode: Mode,
    options: SearchOptions,
    basis: Vec<Poly>,
    pairs: Vec<MersennePair>,
    degrees: Vec<usize>,
    components: Vec<Vec<Component>>,
    /// Odd basis primes that survive the admissibility fixpoint.
    odd: Vec<usize>,
    partitions: Vec<(u32, u32)>,
}

impl PerfectSearch {
    pub fn new(
        max_degree: usize,
        mode: Mode,
        options: SearchOptions,
        factorizer: &dyn Factorizer,
    ) -> Result<Self> {
        if max_degree > options.cap {
            return Err(Error::CapExceeded { requested: max_degree, cap: options.cap });
        }
        let pairs = if max_degree >= 3 { enumerate_mersenne(max_degree - 1)? } else { Vec::new() };
        let mut basis = vec![Poly::x(), Poly::x_plus_one()];
        basis.extend(pairs.iter().map(|p| p.poly()));
        let degrees: Vec<usize> = basis.iter().map(|p| p.degree().unwrap_or(0)).collect();
        let index: HashMap<&Poly, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let jobs: Vec<(usize, u32)> = (0..basis.len())
            .flat_map(|i| (1..=(max_degree / degrees[i]) as u32).map(move |h| (i, h)))
            .collect();
        let computed: Vec<(usize, Option<Component>)> = jobs
            .par_iter()
            .map(|&(i, h)| {
                if !options.prune {
                    return Ok((i, Some(Component { h, sums: Vec::new() })));
                }
                let sum = mode.prime_power_sum(&basis[i], h);
                let f = factorizer.factorize(&sum)?;
                let sums: Option<Vec<(usize, u32)>> =
                    f.iter().map(|(q, e)| index.get(q).map(|&j| (j, *e))).collect();
                Ok((i, sums.map(|sums| Component { h, sums })))
            })
            .collect::<Result<_>>()?;
        let mut components = vec![Vec::new(); basis.len()];
        for (i, c) in computed {
            if let Some(c) = c {
                components[i].push(c);
            }
        }

        let mut search = PerfectSearch {
            max_degree,
            mode,
            options,
            basis,
            pairs,
            degrees,
            components,
            odd: Vec::new(),
            partitions: Vec::new(),
        };
        search.odd = if options.prune {
            search.admissible_fixpoint()
        } else {
            (2..search.basis.len()).collect()
        };
        search.partitions = search.make_partitions();
        debug!(
            "{} search to degree {}: {} basis primes, {} kept, {} partitions",
            mode,
            max_degree,
            search.basis.len(),
            search.odd.len(),
            search.partitions.len()
        );
        Ok(search)
    }

    /// Drops odd primes that cannot occur in a perfect polynomial of the
    /// search, until nothing changes.
    ///
    /// An odd prime `P` of a perfect `A` divides `σ(A)`, so it divides the
    /// sum of some prime power of `A`; and every prime power of `A` has its
    /// sum supported on primes of `A`.
    fn admissible_fixpoint(&mut self) -> Vec<usize> {
        let n = self.basis.len();
        let mut active = vec![true; n];
        loop {
            for i in 0..n {
                if !active[i] {
                    self.components[i].clear();
                }
                let comps = std::mem::take(&mut self.components[i]);
                self.components[i] =
                    comps.into_iter().filter(|c| c.sums.iter().all(|&(j, _)| active[j])).collect();
            }
            let mut reached = vec![false; n];
            for comps in &self.components {
                for c in comps {
                    for &(j, _) in &c.sums {
                        reached[j] = true;
                    }
                }
            }
            let mut changed = false;
            for i in 2..n {
                if active[i] && (!reached[i] || self.components[i].is_empty()) {
                    active[i] = false;
                    changed = true;
                }
            }
            if !changed {
                return (2..n).filter(|&i| active[i]).collect();
            }
        }
    }

    fn make_partitions(&self) -> Vec<(u32, u32)> {
        let has = |i: usize, e: u32| e == 0 || self.components[i].iter().any(|c| c.h == e);
        let m = self.max_degree as u32;
        let mut out = Vec::new();
        for a in 0..=m {
            for b in 0..=m - a {
                if a + b >= 1 && has(X, a) && has(X1, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn partitions(&self) -> &[(u32, u32)] {
        &self.partitions
    }

    /// Mersenne primes still in play after pruning.
    pub fn kept_primes(&self) -> Vec<MersennePair> {
        self.odd.iter().map(|&i| self.pairs[i - 2]).collect()
    }

    pub fn run(&self) -> Result<Vec<SearchHit>> {
        self.run_range(0..self.partitions.len())
    }

    /// Hits from partitions in `range`, in partition order.
    pub fn run_range(&self, range: Range<usize>) -> Result<Vec<SearchHit>> {
        let per_partition: Vec<Vec<Signature>> =
            self.partitions[range].par_iter().map(|&(a, b)| self.run_partition(a, b)).collect();
        per_partition.into_iter().flatten().map(|s| self.hit(s)).collect()
    }

    fn run_partition(&self, a: u32, b: u32) -> Vec<Signature> {
        let mut found = if self.options.prune {
            self.pruned_partition(a, b)
        } else {
            self.full_partition(a, b)
        };
        found.retain(|s| self.mode.divisor_sum_of(&s.factorization()) == s.poly());
        found.sort();
        found
    }

    fn base_sums(&self, i: usize, e: u32) -> &[(usize, u32)] {
        if e == 0 {
            return &[];
        }
        self.components[i].iter().find(|c| c.h == e).map_or(&[], |c| &c.sums)
    }

    fn pruned_partition(&self, a: u32, b: u32) -> Vec<Signature> {
        let mut state = Dfs {
            search: self,
            demand: vec![0u32; self.basis.len()],
            chosen: vec![0u32; self.basis.len()],
            out: Vec::new(),
        };
        state.chosen[X] = a;
        state.chosen[X1] = b;
        for &(j, e) in self.base_sums(X, a).iter().chain(self.base_sums(X1, b)) {
            state.demand[j] += e;
        }
        if state.demand[X] > a || state.demand[X1] > b {
            return Vec::new();
        }
        state.descend(0, (a + b) as usize);
        state.out
    }

    /// Every choice of odd exponents within the degree bound; no divisor sums
    /// are consulted.
    fn full_partition(&self, a: u32, b: u32) -> Vec<Signature> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.full_descend(0, (a + b) as usize, &mut chosen, &mut |c| {
            out.push(Signature::new(a, b, c.to_vec()))
        });
        out
    }

    fn full_descend(
        &self,
        pos: usize,
        used: usize,
        chosen: &mut Vec<(MersennePair, u32)>,
        emit: &mut dyn FnMut(&[(MersennePair, u32)]),
    ) {
        if pos == self.odd.len() {
            emit(chosen);
            return;
        }
        self.full_descend(pos + 1, used, chosen, emit);
        let i = self.odd[pos];
        let d = self.degrees[i];
        let mut h = 1;
        while used + h * d <= self.max_degree {
            chosen.push((self.pairs[i - 2], h as u32));
            self.full_descend(pos + 1, used + h * d, chosen, emit);
            chosen.pop();
            h += 1;
        }
    }

    fn hit(&self, signature: Signature) -> Result<SearchHit> {
        let factorization = signature.factorization();
        let polynomial = factorization.product();
        Ok(SearchHit {
            classification: classify_factored(&polynomial, &factorization, self.mode),
            indecomposable: is_indecomposable_factored(&factorization, self.mode)?,
            conjugate: polynomial.conjugate(),
            polynomial,
            signature,
            mode: self.mode,
        })
    }
}

struct Dfs<'a> {
    search: &'a PerfectSearch,
    /// Exponent of each basis prime in the divisor sum of the chosen part.
    demand: Vec<u32>,
    chosen: Vec<u32>,
    out: Vec<Signature>,
}

impl Dfs<'_> {
    fn descend(&mut self, pos: usize, used: usize) {
        let s = self.search;
        // Demand never decreases, so undecided primes must still cover it.
        let owed: usize = s.odd[pos..].iter().map(|&j| self.demand[j] as usize * s.degrees[j]).sum();
        if used + owed > s.max_degree {
            return;
        }
        if pos == s.odd.len() {
            if s.odd.iter().chain(&[X, X1]).all(|&j| self.demand[j] == self.chosen[j]) {
                let components = s
                    .odd
                    .iter()
                    .filter(|&&j| self.chosen[j] > 0)
                    .map(|&j| (s.pairs[j - 2], self.chosen[j]))
                    .collect();
                self.out.push(Signature::new(self.chosen[X], self.chosen[X1], components));
            }
            return;
        }
        let i = s.odd[pos];
        if self.demand[i] == 0 {
            self.descend(pos + 1, used);
        }
        for c in &s.components[i] {
            let extra = c.h as usize * s.degrees[i];
            if c.h < self.demand[i] || used + extra > s.max_degree {
                continue;
            }
            self.chosen[i] = c.h;
            for &(j, e) in &c.sums {
                self.demand[j] += e;
            }
            let decided = |j: usize| j == X || j == X1 || s.odd[..=pos].contains(&j);
            let ok = c.sums.iter().all(|&(j, _)| !decided(j) || self.demand[j] <= self.chosen[j]);
            if ok {
                self.descend(pos + 1, used + extra);
            }
            for &(j, e) in &c.sums {
                self.demand[j] -= e;
            }
            self.chosen[i] = 0;
        }
    }
}

/// All (unitary) perfect polynomials with Mersenne-only odd part up to
/// `max_degree`, with default options.
pub fn search_perfect(max_degree: usize, mode: Mode) -> Result<Vec<SearchHit>> {
    search_perfect_with(max_degree, mode, SearchOptions::default(), &Seeded::default())
}

pub fn search_perfect_with(
    max_degree: usize,
    mode: Mode,
    options: SearchOptions,
    factorizer: &dyn Factorizer,
) -> Result<Vec<SearchHit>> {
    PerfectSearch::new(max_degree, mode, options, factorizer)?.run()
}
