//! A fixed suite of checks replaying the displayed identities,
//! factorizations, and coefficient and divisibility facts behind the
//! classification, reported as a ledger of [`CheckResult`] rows.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::catalog::{self, M1, M2, M3, M3_BAR};
use crate::divisors::{sigma, sigma_prime_power, sigma_star};
use crate::factor::{factorize, is_irreducible, Factorization};
use crate::mersenne::{
    count_irreducibles, enumerate_mersenne, irreducible_count_lower_bound, is_mersenne_prime,
    mersenne_pair_of, mersenne_slice,
};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The computation contradicts a printed display.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub anchor: String,
}

/// Overrides for the suite inputs. The default runs the standard suite.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    /// Replaces `T_1..T_11` in the `perfect-T` check.
    pub perfect_list: Option<Vec<Poly>>,
}

pub fn run_paper_suite() -> Vec<CheckResult> {
    run_suite(&SuiteConfig::default())
}

type Check = Box<dyn Fn(&SuiteConfig) -> CheckResult + Send + Sync>;

pub fn run_suite(config: &SuiteConfig) -> Vec<CheckResult> {
    let checks: Vec<Check> = vec![
        Box::new(perfect_t),
        Box::new(|_: &SuiteConfig| unitary_u()),
        Box::new(|_: &SuiteConfig| sigma_m2_squared()),
        Box::new(|_: &SuiteConfig| u_display(2, "u4-display", &[("x", 3), ("x+1", 6), ("x^3+x+1", 1)])),
        Box::new(|_: &SuiteConfig| u_display(3, "u6-display", &[("x", 8), ("x+1", 4), ("x^3+x+1", 2)])),
        Box::new(|_: &SuiteConfig| {
            sigma_display(
                "sigma-M2-6",
                3,
                &["x^3+x^2+1", "x^6+x^5+1", "x^9+x^7+x^5+x+1"],
                "x^9+x^7+x^5+x+1",
            )
        }),
        Box::new(|_: &SuiteConfig| {
            sigma_display(
                "sigma-M2-8",
                4,
                &["x^2+x+1", "x^4+x^3+1", "x^6+x+1", "x^12+x^8+x^7+x^4+1"],
                "x^6+x+1",
            )
        }),
        Box::new(|_: &SuiteConfig| canaday_sigma_x()),
        Box::new(|_: &SuiteConfig| alpha_window()),
        Box::new(|_: &SuiteConfig| p_reduction()),
        Box::new(|_: &SuiteConfig| any_divides()),
        Box::new(|_: &SuiteConfig| no_mersenne_8k()),
        Box::new(|_: &SuiteConfig| counting()),
        Box::new(|_: &SuiteConfig| ord2_table()),
        Box::new(|_: &SuiteConfig| m3_alpha()),
    ];
    let mut results: Vec<CheckResult> = checks.par_iter().map(|c| c(config)).collect();
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    results
}

/// Exit-code level summary of a ledger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteStatus {
    AllPass,
    DiscrepancyOnly,
    Failed,
}

pub fn suite_status(results: &[CheckResult]) -> SuiteStatus {
    if results.iter().any(|r| r.status == Status::Fail) {
        SuiteStatus::Failed
    } else if results.iter().any(|r| r.status == Status::Discrepancy) {
        SuiteStatus::DiscrepancyOnly
    } else {
        SuiteStatus::AllPass
    }
}

fn result(id: &str, anchor: &str, ok: bool, expected: String, actual: String) -> CheckResult {
    CheckResult {
        check_id: id.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        expected,
        actual,
        anchor: anchor.to_string(),
    }
}

/// Collects failure descriptions; passes when none were recorded.
fn tally(id: &str, anchor: &str, expected: &str, cases: usize, failures: Vec<String>) -> CheckResult {
    let actual = if failures.is_empty() {
        format!("{cases} cases hold")
    } else {
        format!("{} of {cases} fail: {}", failures.len(), failures.join("; "))
    };
    result(id, anchor, failures.is_empty(), expected.to_string(), actual)
}

fn p(text: &str) -> Poly {
    text.parse().expect("valid polynomial literal")
}

fn perfect_t(config: &SuiteConfig) -> CheckResult {
    let list: Vec<Poly> = match &config.perfect_list {
        Some(list) => list.clone(),
        None => (1..=11).filter_map(catalog::t).collect(),
    };
    let mut failures = Vec::new();
    for (i, t) in list.iter().enumerate() {
        match sigma(t) {
            Ok(s) if s == *t => {}
            Ok(s) => failures.push(format!("T{}: sigma({}) = {}", i + 1, t.to_hex(), s.to_hex())),
            Err(e) => failures.push(format!("T{}: {e}", i + 1)),
        }
    }
    tally("perfect-T", "perfect list T1..T11", "sigma(T_i) = T_i", list.len(), failures)
}

fn unitary_u() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for j in 1..=9 {
        let base = catalog::u(j).expect("j in range");
        for n in 0..=2u32 {
            let a = base.pow(1 << n);
            cases += 1;
            if sigma_star(&a).ok() != Some(a.clone()) {
                failures.push(format!("U{j}^{}", 1 << n));
            }
        }
    }
    tally("unitary-U", "unitary perfect list, all of the form B^(2^n)", "sigma*(U_j^(2^n)) = U_j^(2^n)", cases, failures)
}

fn sigma_m2_squared() -> CheckResult {
    let computed = sigma_prime_power(&M2.poly(), 2);
    let printed = M1.poly() * M3.poly();
    let derived = M1.poly() * M3_BAR.poly();
    let f = factorize(&computed).map(|f| f.to_string()).unwrap_or_else(|e| e.to_string());
    let status = if computed == printed {
        Status::Pass
    } else if computed == derived {
        Status::Discrepancy
    } else {
        Status::Fail
    };
    CheckResult {
        check_id: "sigma-M2-2".into(),
        status,
        expected: format!("printed M1*M3 = {}", Factorization::from_pairs(vec![(M1.poly(), 1), (M3.poly(), 1)])),
        actual: format!("{f} = M1*conj(M3)"),
        anchor: "sigma(M2^2) for h = 1".into(),
    }
}

fn expected_factorization(printed: &[(&str, u32)]) -> Factorization {
    Factorization::from_pairs(printed.iter().map(|&(s, e)| (p(s), e)).collect())
}

fn u_display(h: u32, id: &str, printed: &[(&str, u32)]) -> CheckResult {
    let expected = expected_factorization(printed);
    let u = crate::divisors::u_iterate(M2, h).expect("M2 is prime");
    let actual = factorize(&u).expect("nonzero");
    let ok = actual == expected && u.splits().is_none();
    result(
        id,
        "U_(2h) for M2 and h in {2, 3}, which do not split",
        ok,
        format!("{expected}, not split"),
        format!("{actual}, splits: {}", u.splits().is_some()),
    )
}

fn sigma_display(id: &str, h: u32, printed: &[&str], non_mersenne: &str) -> CheckResult {
    let pairs: Vec<(&str, u32)> = printed.iter().map(|&s| (s, 1)).collect();
    let expected = expected_factorization(&pairs);
    let s = sigma_prime_power(&M2.poly(), 2 * h);
    let actual = factorize(&s).expect("nonzero");
    let witness = p(non_mersenne);
    let ok = actual == expected
        && actual.multiplicity(&witness) == 1
        && is_irreducible(&witness).unwrap_or(false)
        && !is_mersenne_prime(&witness);
    result(
        id,
        "sigma(M2^(2h)) displays for 2h+1 in {7, 9}",
        ok,
        format!("{expected} with non-Mersenne prime {witness}"),
        actual.to_string(),
    )
}

fn canaday_sigma_x() -> CheckResult {
    let mut all_mersenne = Vec::new();
    let mut failures = Vec::new();
    for a in 1..=20u32 {
        let f = factorize(&sigma_prime_power(&Poly::x(), a)).expect("nonzero");
        let pairs: Vec<_> = f.primes().map(mersenne_pair_of).collect();
        if pairs.iter().all(Option::is_some) {
            all_mersenne.push(a);
            if !pairs.iter().flatten().all(|&m| catalog::is_small_mersenne(m)) {
                failures.push(format!("a = {a} has a Mersenne factor outside the small set"));
            }
        }
    }
    if all_mersenne != [2, 4, 6] {
        failures.push(format!("all-Mersenne exponents {all_mersenne:?}"));
    }
    tally(
        "canaday-sigma-x",
        "sigma(x^a) Mersenne-only forces a in {2,4,6}",
        "sigma(x^a) all-Mersenne exactly for a in {2, 4, 6}, a <= 20",
        20,
        failures,
    )
}

fn alpha_window() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in enumerate_mersenne(8).expect("valid bound") {
        let mp = m.poly();
        let d = m.degree();
        for h in 1..=10u32 {
            let s = sigma_prime_power(&mp, 2 * h);
            let top = mp.pow(2 * h as u64);
            let two = &top + &mp.pow(2 * h as u64 - 1);
            for l in 1..2 * d {
                cases += 1;
                let reference = if l < d { &top } else { &two };
                if s.alpha(l).ok() != reference.alpha(l).ok() {
                    failures.push(format!("{m} h={h} l={l}"));
                }
            }
        }
    }
    tally(
        "alpha-window",
        "top coefficients of sigma(M^(2h)) follow M^(2h) and M^(2h)+M^(2h-1)",
        "alpha_l(sigma(M^2h)) matches on both windows",
        cases,
        failures,
    )
}

fn p_reduction() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in enumerate_mersenne(6).expect("valid bound") {
        let mp = m.poly();
        for h in 1..=15u32 {
            let whole = sigma_prime_power(&mp, 2 * h);
            for k in arith::divisors(2 * h as u64 + 1).expect("positive") {
                cases += 1;
                if !sigma_prime_power(&mp, k as u32 - 1).divides(&whole) {
                    failures.push(format!("{m} h={h} k={k}"));
                }
            }
        }
    }
    tally(
        "p-reduction",
        "sigma(M^(k-1)) divides sigma(M^(2h)) for k | 2h+1",
        "exact division",
        cases,
        failures,
    )
}

fn any_divides() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    // The irreducibles of degree 2 and 3, each paired with p = 2^m - 1.
    let small: Vec<(Poly, u32)> =
        vec![(p("x^2+x+1"), 3), (p("x^3+x^2+1"), 7), (p("x^3+x+1"), 7)];
    for m in enumerate_mersenne(8).expect("valid bound") {
        let mp = m.poly();
        for prime in [3u32, 7] {
            let s = sigma_prime_power(&mp, prime - 1);
            for (q, q_prime) in &small {
                cases += 1;
                let expected = *q != mp && *q_prime == prime;
                if q.divides(&s) != expected {
                    failures.push(format!("{q} | sigma({m}^{}) expected {expected}", prime - 1));
                }
            }
        }
    }
    tally(
        "anydivides",
        "every irreducible P != M of degree m divides sigma(M^(p-1)) when p = 2^m - 1",
        "divisibility by the degree-2 and degree-3 irreducibles exactly as stated",
        cases,
        failures,
    )
}

fn no_mersenne_8k() -> CheckResult {
    let sizes: Vec<usize> = [8, 16, 24].iter().map(|&m| mersenne_slice(m).len()).collect();
    result(
        "no-mersenne-8k",
        "no Mersenne prime of degree a multiple of 8",
        sizes == [0, 0, 0],
        "[0, 0, 0]".into(),
        format!("{sizes:?}"),
    )
}

fn counting() -> CheckResult {
    let mut failures = Vec::new();
    for m in 4..=64usize {
        let n2 = count_irreducibles(m).expect("in range");
        let phi = arith::phi(m as u64).expect("positive");
        if phi >= n2 {
            failures.push(format!("phi({m}) = {phi} >= N2 = {n2}"));
        }
        if m <= 32 && n2 < irreducible_count_lower_bound(m).expect("in range") {
            failures.push(format!("N2({m}) below the lower bound"));
        }
    }
    tally("counting", "phi(m) < N2(m) and the lower bound for N2(m)", "phi(m) < N2(m), m = 4..64", 61, failures)
}

fn ord2_table() -> CheckResult {
    let table = [(97u64, 48u64), (673, 48), (17, 8), (257, 16), (65537, 32)];
    let actual: Vec<(u64, u64)> =
        table.iter().map(|&(q, _)| (q, arith::ord2(q).unwrap_or(0))).collect();
    result(
        "ord2-table",
        "ord_p(2) = 48 for p in {97, 673}; Fermat primes",
        actual == table,
        format!("{table:?}"),
        format!("{actual:?}"),
    )
}

fn m3_alpha() -> CheckResult {
    let mut failures = Vec::new();
    for m in [M3, M3_BAR] {
        for h in 1..=12u32 {
            let f = factorize(&sigma_prime_power(&m.poly(), 2 * h)).expect("nonzero");
            if f.primes().all(is_mersenne_prime) {
                failures.push(format!("{m} h={h} is all-Mersenne"));
            }
        }
    }
    tally(
        "M3-alpha",
        "alpha_3(U_2h) = 1 or alpha_5(U_2h) = 1 for M3, through its consequence",
        "sigma(M3^(2h)) has a non-Mersenne prime factor, h <= 12",
        24,
        failures,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pristine_run_has_one_discrepancy() {
        let results = run_paper_suite();
        let bad: Vec<_> = results.iter().filter(|r| r.status != Status::Pass).collect();
        assert_eq!(bad.len(), 1, "{bad:#?}");
        assert_eq!(bad[0].check_id, "sigma-M2-2");
        assert_eq!(bad[0].status, Status::Discrepancy);
        assert_eq!(suite_status(&results), SuiteStatus::DiscrepancyOnly);
    }

    #[test]
    fn corrupted_list_fails() {
        let mut list: Vec<Poly> = (1..=11).filter_map(catalog::t).collect();
        list[4] = &list[4] + &Poly::x();
        let results = run_suite(&SuiteConfig { perfect_list: Some(list) });
        let row = results.iter().find(|r| r.check_id == "perfect-T").unwrap();
        assert_eq!(row.status, Status::Fail);
        assert!(row.actual.contains("T5"), "{}", row.actual);
    }

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<String> = run_paper_suite().into_iter().map(|r| r.check_id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 15);
    }
}
