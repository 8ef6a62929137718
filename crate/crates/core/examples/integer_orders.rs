//! Multiplicative order of 2 modulo primes, flagging Mersenne numbers,
//! Fermat primes and orders divisible by 8.
//!
//! cargo run --example integer_orders -- 3 7 17 97 257 673 65537

use gf2_perfect::arith::classify_prime;

fn main() -> anyhow::Result<()> {
    let mut primes: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if primes.is_empty() {
        primes = vec![3, 5, 7, 17, 31, 97, 127, 257, 673, 65537];
    }
    println!("{:>8} {:>6}  mersenne fermat  8|ord", "p", "ord2");
    for p in primes {
        let info = classify_prime(p)?;
        println!(
            "{p:>8} {:>6}  {:<8} {:<6}  {}",
            info.ord2,
            info.is_mersenne_number,
            info.is_fermat_prime,
            info.ord2 % 8 == 0
        );
    }
    Ok(())
}
