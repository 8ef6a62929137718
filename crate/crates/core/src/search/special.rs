use std::collections::HashMap;

use rayon::prelude::*;

use super::{Factorizer, SearchHit, Seeded, DEFAULT_CAP};
use crate::divisors::{classify_factored, is_indecomposable_factored, sigma_prime_power, Mode, Signature};
use crate::error::{Error, Result};
use crate::mersenne::{enumerate_mersenne, MersennePair};
use crate::poly::Poly;

fn check_cap(max_degree: usize) -> Result<()> {
    if max_degree > DEFAULT_CAP {
        return Err(Error::CapExceeded { requested: max_degree, cap: DEFAULT_CAP });
    }
    Ok(())
}

fn primes_for(max_degree: usize) -> Result<Vec<MersennePair>> {
    if max_degree < 4 {
        return Ok(Vec::new());
    }
    enumerate_mersenne(max_degree / 2)
}

/// Every `P_1^2 ⋯ P_m^2` with distinct Mersenne primes `P_i` and degree at
/// most `max_degree`, as signatures with `a = b = 0`.
pub fn special_candidates(max_degree: usize) -> Result<Vec<Signature>> {
    check_cap(max_degree)?;
    let primes = primes_for(max_degree)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets(&primes, 0, max_degree / 2, &mut chosen, &mut out);
    Ok(out)
}

fn subsets(
    primes: &[MersennePair],
    pos: usize,
    budget: usize,
    chosen: &mut Vec<(MersennePair, u32)>,
    out: &mut Vec<Signature>,
) {
    if pos == primes.len() {
        if !chosen.is_empty() {
            out.push(Signature::new(0, 0, chosen.clone()));
        }
        return;
    }
    subsets(primes, pos + 1, budget, chosen, out);
    let d = primes[pos].degree();
    if d <= budget {
        chosen.push((primes[pos], 2));
        subsets(primes, pos + 1, budget - d, chosen, out);
        chosen.pop();
    }
}

/// Special perfect polynomials `P_1^2 ⋯ P_m^2` with every `P_i` a Mersenne
/// prime, up to `max_degree`.
///
/// A prime `P` is kept only while every prime factor of `σ(P^2)` is itself
/// kept; the remaining subsets are enumerated with the exponent balance
/// checked incrementally.
pub fn search_special_perfect(max_degree: usize) -> Result<Vec<SearchHit>> {
    search_special_perfect_with(max_degree, &Seeded::default())
}

pub fn search_special_perfect_with(
    max_degree: usize,
    factorizer: &dyn Factorizer,
) -> Result<Vec<SearchHit>> {
    check_cap(max_degree)?;
    let primes = primes_for(max_degree)?;
    let index: HashMap<Poly, usize> =
        primes.iter().enumerate().map(|(i, p)| (p.poly(), i)).collect();
    let sums: Vec<Option<Vec<usize>>> = primes
        .par_iter()
        .map(|p| {
            let f = factorizer.factorize(&sigma_prime_power(&p.poly(), 2))?;
            // One entry per unit of multiplicity.
            Ok(f.iter()
                .map(|(q, e)| index.get(q).map(|&j| vec![j; *e as usize]))
                .collect::<Option<Vec<_>>>()
                .map(|v| v.concat()))
        })
        .collect::<Result<_>>()?;

    let mut active: Vec<bool> = sums.iter().map(Option::is_some).collect();
    loop {
        let mut reached = vec![false; primes.len()];
        let mut changed = false;
        for i in 0..primes.len() {
            let Some(s) = &sums[i] else { continue };
            if active[i] && s.iter().any(|&j| !active[j]) {
                active[i] = false;
                changed = true;
            }
            if active[i] {
                s.iter().for_each(|&j| reached[j] = true);
            }
        }
        for i in 0..primes.len() {
            if active[i] && !reached[i] {
                active[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<usize> = (0..primes.len()).filter(|&i| active[i]).collect();
    log::debug!("special search to degree {max_degree}: {} of {} primes kept", kept.len(), primes.len());

    let mut found = Vec::new();
    let mut demand = vec![0u32; primes.len()];
    let mut chosen = vec![false; primes.len()];
    balance(&primes, &sums, &kept, 0, max_degree / 2, &mut demand, &mut chosen, &mut found);

    found
        .into_iter()
        .filter(|s: &Signature| sigma_check(s))
        .map(|signature| {
            let f = signature.factorization();
            let polynomial = f.product();
            Ok(SearchHit {
                classification: classify_factored(&polynomial, &f, Mode::Perfect),
                indecomposable: is_indecomposable_factored(&f, Mode::Perfect)?,
                conjugate: polynomial.conjugate(),
                polynomial,
                signature,
                mode: Mode::Perfect,
            })
        })
        .collect()
}

fn sigma_check(s: &Signature) -> bool {
    let f = s.factorization();
    crate::divisors::sigma_of(&f) == f.product()
}

#[allow(clippy::too_many_arguments)]
fn balance(
    primes: &[MersennePair],
    sums: &[Option<Vec<usize>>],
    kept: &[usize],
    pos: usize,
    budget: usize,
    demand: &mut [u32],
    chosen: &mut [bool],
    out: &mut Vec<Signature>,
) {
    if pos == kept.len() {
        let balanced = kept.iter().all(|&j| demand[j] == if chosen[j] { 2 } else { 0 });
        if balanced && chosen.iter().any(|&c| c) {
            let comps = kept.iter().filter(|&&j| chosen[j]).map(|&j| (primes[j], 2)).collect();
            out.push(Signature::new(0, 0, comps));
        }
        return;
    }
    let i = kept[pos];
    if demand[i] == 0 {
        balance(primes, sums, kept, pos + 1, budget, demand, chosen, out);
    }
    let d = primes[i].degree();
    if d > budget || demand[i] > 2 {
        return;
    }
    let s = sums[i].as_ref().expect("kept primes have sums");
    chosen[i] = true;
    s.iter().for_each(|&j| demand[j] += 1);
    let decided = |j: usize| kept[..=pos].contains(&j);
    if s.iter().all(|&j| !decided(j) || demand[j] <= if chosen[j] { 2 } else { 0 }) {
        balance(primes, sums, kept, pos + 1, budget - d, demand, chosen, out);
    }
    s.iter().for_each(|&j| demand[j] -= 1);
    chosen[i] = false;
}
