#![allow(dead_code)]

use cartierlab::polyring::{Monomial, Polynomial, RingRef};
use proptest::prelude::*;
use rand::Rng;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Raw terms: exponent vectors and coefficients, later reduced mod p.
pub type RawPoly = Vec<(Vec<u32>, u32)>;

pub fn build(ring: &RingRef, raw: &RawPoly) -> Polynomial {
    Polynomial::from_terms(
        ring,
        raw.iter()
            .map(|(e, c)| (Monomial::from_exponents(&e[..ring.nvars()]), *c as u64)),
    )
}

pub fn raw_poly(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), 0u32..1000), 0..=max_terms)
}

pub fn random_poly<R: Rng>(rng: &mut R, ring: &RingRef, max_terms: usize, max_exp: u32) -> Polynomial {
    let n = ring.nvars();
    let k = rng.gen_range(0..=max_terms);
    let raw: RawPoly = (0..k)
        .map(|_| ((0..n).map(|_| rng.gen_range(0..=max_exp)).collect(), rng.gen_range(0..1000)))
        .collect();
    build(ring, &raw)
}
