mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use gf2_perfect::arith::{self, ord2};
use gf2_perfect::catalog;
use gf2_perfect::divisors::{
    is_perfect, is_unitary_perfect, sigma, sigma_prime_power, sigma_star, u_iterate, Mode,
};
use gf2_perfect::factor::{factorize, factorize_with_seed, is_irreducible};
use gf2_perfect::mersenne::{count_irreducibles, enumerate_mersenne, mersenne_slice};
use gf2_perfect::search::{conjecture_scan, search_perfect, Seeded};
use gf2_perfect::verify::run_paper_suite;
use gf2_perfect::Poly;

/// Polynomials of degree at most 64.
fn poly() -> impl Strategy<Value = Poly> {
    (any::<u64>(), any::<bool>()).prop_map(|(lo, hi)| Poly::from_words(vec![lo, hi as u64]))
}

fn nonzero() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn freshmans_dream(a in poly(), b in poly()) {
        prop_assert_eq!((&a + &b).square(), &a.square() + &b.square());
        prop_assert_eq!(a.square(), &a * &a);
        prop_assert_eq!(a.square().sqrt(), Some(a.clone()));
        prop_assert!(a.square().is_square());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.conjugate().degree(), a.degree());
    }

    #[test]
    fn conjugate_matches_oracle(bits in any::<u64>()) {
        prop_assert_eq!(Poly::from_u64(bits).conjugate(), Poly::from_u64(common::conj(bits)));
    }

    #[test]
    fn multiplication_matches_oracle(a in any::<u64>(), b in any::<u64>()) {
        let prod = common::mul(a, b);
        let want = Poly::from_words(vec![prod as u64, (prod >> 64) as u64]);
        prop_assert_eq!(&Poly::from_u64(a) * &Poly::from_u64(b), want);
    }

    #[test]
    fn divrem_round_trip(a in poly(), q in nonzero()) {
        let (quot, rem) = a.divrem(&q).unwrap();
        prop_assert_eq!(&(&q * &quot) + &rem, a);
        prop_assert!(rem.degree().map_or(true, |d| d < q.degree().unwrap()));
    }

    #[test]
    fn text_round_trips(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a.clone());
        prop_assert_eq!(a.to_hex().parse::<Poly>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), a);
    }

    #[test]
    fn factorization_round_trip(a in nonzero()) {
        let f = factorize(&a).unwrap();
        prop_assert_eq!(f.product(), a.clone());
        for p in f.primes() {
            prop_assert!(is_irreducible(p).unwrap());
        }
        let single = f.omega() == 1 && f.iter().all(|(_, e)| *e == 1);
        prop_assert_eq!(is_irreducible(&a).unwrap(), single);
    }

    #[test]
    fn factorization_is_seed_independent(a in nonzero(), s1 in any::<u64>(), s2 in any::<u64>()) {
        prop_assert_eq!(factorize_with_seed(&a, s1).unwrap(), factorize_with_seed(&a, s2).unwrap());
    }

    #[test]
    fn sigma_is_multiplicative(a in 1u32.., b in 1u32..) {
        let (a, b) = (Poly::from_u64(a as u64), Poly::from_u64(b as u64));
        prop_assume!(a.gcd(&b).unwrap().is_one());
        let ab = &a * &b;
        prop_assert_eq!(sigma(&ab).unwrap(), &sigma(&a).unwrap() * &sigma(&b).unwrap());
        prop_assert_eq!(sigma_star(&ab).unwrap(), &sigma_star(&a).unwrap() * &sigma_star(&b).unwrap());
    }

    #[test]
    fn sigma_preserves_degree_and_commutes_with_conjugation(a in nonzero()) {
        let s = sigma(&a).unwrap();
        let t = sigma_star(&a).unwrap();
        prop_assert_eq!(s.degree(), a.degree());
        prop_assert_eq!(t.degree(), a.degree());
        prop_assert_eq!(sigma(&a.conjugate()).unwrap(), s.conjugate());
        prop_assert_eq!(sigma_star(&a.conjugate()).unwrap(), t.conjugate());
    }

    #[test]
    fn factor_int_multiplies_back(n in 1u64..) {
        let f = arith::factor_int(n).unwrap();
        prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        prop_assert!(f.iter().all(|&(p, _)| arith::is_prime(p)));
    }
}

#[test]
fn sigma_matches_brute_force_below_degree_12() {
    for a in 1u64..1 << 12 {
        let p = Poly::from_u64(a);
        assert_eq!(sigma(&p).unwrap(), Poly::from_u64(common::sigma_brute(a)), "{p}");
        assert_eq!(sigma_star(&p).unwrap(), Poly::from_u64(common::sigma_star_brute(a)), "{p}");
    }
}

#[test]
fn factorize_matches_trial_division_below_degree_12() {
    for a in 2u64..1 << 13 {
        let want: Vec<(Poly, u32)> =
            common::factor(a).into_iter().map(|(p, e)| (Poly::from_u64(p), e)).collect();
        let got = factorize(&Poly::from_u64(a)).unwrap().into_pairs();
        assert_eq!(got, want, "{a:#x}");
    }
}

#[test]
fn irreducible_sweep_matches_count() {
    for m in 1..=16usize {
        let found = ((1u64 << m)..(1u64 << (m + 1)))
            .filter(|&a| is_irreducible(&Poly::from_u64(a)).unwrap())
            .count() as u64;
        assert_eq!(found, count_irreducibles(m).unwrap(), "m = {m}");
    }
}

#[test]
fn divisibility_transfer() {
    for m in enumerate_mersenne(6).unwrap() {
        let mp = m.poly();
        for h in 1..=15u32 {
            let whole = sigma_prime_power(&mp, 2 * h);
            for k in arith::divisors(2 * h as u64 + 1).unwrap() {
                assert!(sigma_prime_power(&mp, k as u32 - 1).divides(&whole), "{m} h={h} k={k}");
            }
        }
    }
}

fn irreducibles_of_degree(r: u32) -> Vec<Poly> {
    ((1u64 << r)..(1u64 << (r + 1)))
        .filter(|&a| common::is_irreducible(a))
        .map(Poly::from_u64)
        .collect()
}

#[test]
fn no_small_prime_divisor_when_orders_differ() {
    // p prime, 2^r - 1 a prime other than p.
    for (p, r) in [(3u32, 3u32), (5, 2), (5, 3), (7, 2)] {
        for m in enumerate_mersenne(8).unwrap() {
            let s = sigma_prime_power(&m.poly(), p - 1);
            for q in irreducibles_of_degree(r) {
                assert!(!q.divides(&s), "{q} divides sigma({m}^{})", p - 1);
            }
        }
    }
}

#[test]
fn small_divisors_of_sigma_mersenne_power() {
    let m1: Poly = "x^2+x+1".parse().unwrap();
    let cubics: [Poly; 2] = ["x^3+x^2+1".parse().unwrap(), "x^3+x+1".parse().unwrap()];
    for m in enumerate_mersenne(8).unwrap() {
        let mp = m.poly();
        for p in [3u32, 7] {
            let s = sigma_prime_power(&mp, p - 1);
            assert_eq!(m1.divides(&s), mp != m1 && p == 3, "{m} p={p}");
            for c in &cubics {
                assert_eq!(c.divides(&s), mp != *c && p == 7, "{c} {m} p={p}");
            }
        }
    }
}

#[test]
fn catalogued_polynomials_are_perfect() {
    for n in 1..=6 {
        assert!(is_perfect(&catalog::trivial_perfect(n)));
        assert!(is_unitary_perfect(&catalog::trivial_unitary(n)));
    }
    let ts: BTreeSet<Poly> = (1..=11).map(|i| catalog::t(i).unwrap()).collect();
    assert_eq!(ts.len(), 11);
    assert!(ts.iter().all(is_perfect));
    for j in 1..=9 {
        for n in 0..=3 {
            let u = catalog::u(j).unwrap().pow(1 << n);
            assert!(is_unitary_perfect(&u), "U{j}^{}", 1 << n);
            assert!(is_unitary_perfect(&u.conjugate()), "conj(U{j})^{}", 1 << n);
        }
    }
}

#[test]
fn mersenne_sets() {
    let all = enumerate_mersenne(24).unwrap();
    let set: BTreeSet<_> = all.iter().copied().collect();
    for m in &all {
        assert!(set.contains(&m.conjugate()), "{m}");
    }
    for m in 4..=24usize {
        assert!(count_irreducibles(m).unwrap() > mersenne_slice(m).len() as u64, "m = {m}");
    }
    for m in [8u32, 16, 24] {
        for c in (1..m).filter(|&c| arith::gcd(c as u64, m as u64) == 1) {
            let q = &Poly::monomial(c as usize) * &Poly::x_plus_one_pow((m - c) as usize) + Poly::one();
            let omega = factorize(&q).unwrap().omega();
            assert!(omega % 2 == 0, "1+x^{c}(x+1)^{} has {omega} prime factors", m - c);
        }
    }
}

#[test]
fn multiplicative_order_of_two() {
    for p in (3u64..10_000).filter(|&p| arith::is_prime(p)) {
        let k = ord2(p).unwrap();
        assert_eq!(k, common::ord2_brute(p), "p = {p}");
        assert_eq!((p - 1) % k, 0);
    }
    for f in [17u64, 257, 65537] {
        assert_eq!(ord2(f).unwrap() % 8, 0);
    }
    for p in [97u64, 673] {
        assert_eq!(ord2(p).unwrap() % 8, 0);
        assert!(arith::mersenne_exponent(p).is_none());
        assert!(!(p - 1).is_power_of_two());
    }
}

#[test]
fn scan_report_invariants() {
    let reports = conjecture_scan(10, 20, &Seeded::default()).unwrap();
    for r in &reports {
        let m = r.pair.poly();
        let product = r
            .sigma_factors
            .iter()
            .fold(Poly::one(), |acc, f| &acc * &f.poly.pow(f.multiplicity as u64));
        assert_eq!(product, sigma_prime_power(&m, 2 * r.h));
        if r.is_covered() && !r.known_exception {
            assert!(!r.all_mersenne, "{} h={}", r.pair, r.h);
        }
        if r.all_mersenne && r.squarefree {
            let u = u_iterate(r.pair, r.h).unwrap();
            assert!(r.u_splits && r.u_square);
            assert!(u.splits().is_some() && u.is_square());
            let (a, b) = r.sigma_factors.iter().fold((0, 0), |(a, b), f| {
                let q = f.mersenne.unwrap();
                (a + q.a, b + q.b)
            });
            assert!(a % 2 == 0 && b % 2 == 0, "{} h={}: u={a}, v={b}", r.pair, r.h);
        }
        if r.all_mersenne {
            let orders_divide = arith::factor_int(2 * r.h as u64 + 1).unwrap().iter().all(|&(p, _)| {
                let k = ord2(p).unwrap() as usize;
                r.sigma_factors.iter().all(|f| f.poly.degree().unwrap() % k == 0)
            });
            assert!(orders_divide, "{} h={}", r.pair, r.h);
        }
    }
}

#[test]
fn scan_is_independent_of_worker_count() {
    let run = |threads| {
        with_pool(threads, || {
            let reports = conjecture_scan(8, 12, &Seeded::default()).unwrap();
            reports.iter().map(|r| serde_json::to_string(r).unwrap()).collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn search_hits_are_consistent() {
    for (mode, max) in [(Mode::Perfect, 20), (Mode::Unitary, 26)] {
        let one = with_pool(1, || search_perfect(max, mode).unwrap());
        let four = with_pool(4, || search_perfect(max, mode).unwrap());
        assert_eq!(one, four);
        let all: BTreeSet<Poly> = one.iter().map(|h| h.polynomial.clone()).collect();
        for hit in &one {
            assert_eq!(hit.signature.poly(), hit.polynomial);
            assert!(hit.polynomial.degree().unwrap() <= max);
            assert_eq!(mode.divisor_sum_of(&hit.signature.factorization()), hit.polynomial);
            assert_eq!(hit.conjugate, hit.polynomial.conjugate());
            assert!(all.contains(&hit.conjugate), "{mode}: {} lacks its conjugate", hit.polynomial);
        }
    }
}

#[test]
fn verify_suite_is_deterministic() {
    let a = run_paper_suite();
    assert_eq!(a, run_paper_suite());
    assert!(a.iter().all(|r| !r.anchor.is_empty()));
}
