//! Exact arithmetic over F_p: the field, exponent vectors, sparse polynomials,
//! rational exponents, and the polynomial text grammar.

mod field;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use field::{PrimeField, MAX_PRIME};
pub use monomial::Monomial;
pub use parse::{parse_ideal_generators, parse_polynomial};
pub use poly::{Polynomial, Ring, RingRef};
pub use rational::{ceil_scale, RationalExponent};

pub(crate) use field::gcd;
pub(crate) use poly::same_ring;
