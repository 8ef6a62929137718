//! Arithmetic in GF(2)[x] and searches for perfect and unitary perfect
//! polynomials whose odd prime factors are Mersenne primes.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod divisors;
pub mod error;
pub mod factor;
pub mod mersenne;
pub mod poly;
pub mod search;
pub mod verify;

pub use divisors::{Mode, Signature};
pub use error::{Error, Result};
pub use factor::Factorization;
pub use mersenne::MersennePair;
pub use poly::Poly;
