//! An on-disk factorization cache shared by repeated runs.
//!
//! cargo run --example factor_cache -- /tmp/factors.jsonl

use std::path::PathBuf;
use std::time::Instant;

use gf2_perfect::catalog::M2;
use gf2_perfect::cli::cache::FactorCache;
use gf2_perfect::divisors::sigma_prime_power;
use gf2_perfect::search::{Factorizer, Seeded};

fn main() -> anyhow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("gf2-factor-cache.jsonl"));
    let cache = FactorCache::open(&path, Seeded::default())?;
    println!("{}: {} entries", path.display(), cache.len());

    let start = Instant::now();
    for h in 1..=64 {
        cache.factorize(&sigma_prime_power(&M2.poly(), 2 * h))?;
    }
    println!("64 factorizations in {:.2?}; {} entries now", start.elapsed(), cache.len());
    Ok(())
}
