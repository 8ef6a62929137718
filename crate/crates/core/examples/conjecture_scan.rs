//! Factors sigma(M^2h) for Mersenne primes M and reports which cases have a
//! non-Mersenne prime factor.
//!
//! cargo run --release --example conjecture_scan -- 10 20

use gf2_perfect::search::{conjecture_scan, Seeded};

fn main() -> anyhow::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let max_degree = args.first().copied().unwrap_or(10);
    let max_h = args.get(1).copied().unwrap_or(20) as u32;

    let reports = conjecture_scan(max_degree, max_h, &Seeded::default())?;
    let covered = reports.iter().filter(|r| r.is_covered()).count();
    println!("{} cases, {covered} covered by a known clause", reports.len());
    for r in reports.iter().filter(|r| r.all_mersenne) {
        let tags: Vec<String> = r.hypothesis_tags.iter().map(|t| t.to_string()).collect();
        let factors: Vec<String> = r.sigma_factors.iter().map(|f| f.poly.to_string()).collect();
        println!(
            "all-Mersenne: {} h={} [{}] tags [{}]{}",
            r.pair,
            r.h,
            factors.join(", "),
            tags.join(","),
            if r.known_exception { " (known exception)" } else { "" }
        );
    }
    let violations = reports.iter().filter(|r| r.is_violation()).count();
    println!("violations: {violations}");
    Ok(())
}
