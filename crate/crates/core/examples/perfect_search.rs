//! Exhaustive search for perfect and unitary perfect polynomials whose odd
//! prime factors are all Mersenne primes.
//!
//! cargo run --release --example perfect_search -- [perfect|unitary] [max_degree]

use std::time::Instant;

use gf2_perfect::poly::{format, Style};
use gf2_perfect::search::{search_perfect, search_special_perfect};
use gf2_perfect::Mode;

fn main() -> gf2_perfect::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mode = match args.first().map(String::as_str) {
        Some("unitary") => Mode::Unitary,
        _ => Mode::Perfect,
    };
    let max_degree = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);

    let start = Instant::now();
    let hits = search_perfect(max_degree, mode)?;
    println!("{mode} polynomials of degree <= {max_degree} ({:.2?})", start.elapsed());
    for hit in &hits {
        println!(
            "  {:<12} deg {:>2}  {}{}",
            hit.classification.to_string(),
            hit.polynomial.degree().unwrap_or(0),
            format(&hit.polynomial, Style::Product),
            if hit.indecomposable { "" } else { "  (decomposable)" },
        );
    }

    let start = Instant::now();
    let special = search_special_perfect(40)?;
    println!("special perfect, degree <= 40: {} found ({:.2?})", special.len(), start.elapsed());
    Ok(())
}
