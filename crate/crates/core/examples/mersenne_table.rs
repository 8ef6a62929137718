//! Mersenne primes 1 + x^a (x+1)^b by degree, against the number of
//! irreducibles and Euler's totient.
//!
//! cargo run --example mersenne_table -- 24

use gf2_perfect::arith::phi;
use gf2_perfect::mersenne::{count_irreducibles, mersenne_slice};

fn main() -> anyhow::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    println!("{:>3} {:>10} {:>6} {:>4}  pairs", "m", "N2(m)", "phi(m)", "#M");
    for m in 2..=max {
        let pairs = mersenne_slice(m);
        let list: Vec<String> = pairs.iter().map(|p| format!("({},{})", p.a, p.b)).collect();
        println!(
            "{m:>3} {:>10} {:>6} {:>4}  {}",
            count_irreducibles(m)?,
            phi(m as u64)?,
            pairs.len(),
            list.join(" ")
        );
    }
    Ok(())
}
