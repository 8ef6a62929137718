//! Polynomial arithmetic over GF(2): parsing, products, division, gcd and the
//! conjugation x -> x+1.
//!
//! cargo run --example arithmetic -- "x^5+x^2+1" "x^3+x+1"

use gf2_perfect::Poly;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a: Poly = args.first().map_or("x^5+x^2+1", String::as_str).parse()?;
    let b: Poly = args.get(1).map_or("x^3+x+1", String::as_str).parse()?;

    println!("a       = {a}  ({})", a.to_hex());
    println!("b       = {b}  ({})", b.to_hex());
    println!("a + b   = {}", &a + &b);
    println!("a * b   = {}", &a * &b);
    let (q, r) = a.divrem(&b)?;
    println!("a / b   = {q}, remainder {r}");
    println!("gcd     = {}", a.gcd(&b)?);
    println!("a^2     = {}", a.square());
    println!("conj(a) = {}", a.conjugate());
    for l in 0..=3 {
        println!("alpha_{l}(a * b) = {}", (&a * &b).alpha(l)? as u8);
    }
    Ok(())
}
