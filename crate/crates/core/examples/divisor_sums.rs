//! The divisor sums sigma and sigma* and the perfect-polynomial tests built
//! on them.
//!
//! cargo run --example divisor_sums -- "x^4+x^2"

use gf2_perfect::catalog::M2;
use gf2_perfect::divisors::{classify, divisor_sum, is_indecomposable, u_iterate};
use gf2_perfect::factor::factorize;
use gf2_perfect::{Mode, Poly};

fn main() -> anyhow::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x^5+x^2".into());
    let a: Poly = text.parse()?;
    println!("A = {} = {}", a, factorize(&a)?);
    for mode in [Mode::Perfect, Mode::Unitary] {
        let s = divisor_sum(&a, mode)?;
        let class = classify(&a, mode)?;
        print!("{mode:>8}: sum = {}, {}", factorize(&s)?, class.kind);
        if s == a {
            print!(", indecomposable {}", is_indecomposable(&a, mode)?);
        }
        println!();
    }

    println!("sigma(sigma(M2^2h)) for M2 = {}:", M2.poly());
    for h in 1..=4 {
        let u = u_iterate(M2, h)?;
        println!("  h = {h}: {}  splits {}", factorize(&u)?, u.splits().is_some());
    }
    Ok(())
}
