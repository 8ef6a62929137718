//! Factorization into irreducibles, with irreducibility and order tests.
//!
//! cargo run --example factorization -- "x^15+1" "x^4+x+1"

use gf2_perfect::factor::{factorize, is_irreducible, is_primitive, poly_order};
use gf2_perfect::Poly;

fn main() -> anyhow::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = vec!["x^15+1".into(), "x^6+x^3+x^2+x+1".into(), "x^4+x+1".into()];
    }
    for text in &inputs {
        let p: Poly = text.parse()?;
        println!("{p} = {}", factorize(&p)?);
        if is_irreducible(&p)? && p.coeff(0) {
            println!("  irreducible, order {}, primitive {}", poly_order(&p)?, is_primitive(&p)?);
        }
    }
    Ok(())
}
