//! Runs the built-in check suite and prints one row per check.
//!
//! cargo run --example verify_paper

use gf2_perfect::verify::{run_paper_suite, suite_status};

fn main() {
    let results = run_paper_suite();
    for r in &results {
        println!("{:<12} {:<16} {}", r.status.to_string(), r.check_id, r.anchor);
        println!("{:<29} actual:   {}", "", r.actual);
        println!("{:<29} expected: {}", "", r.expected);
    }
    println!("{:?}", suite_status(&results));
}
