//! Frobenius pushforward decomposition and the Cartier operator.
//!
//! On F_p[x_1..x_n] with q = p^e, every polynomial splits uniquely as
//! `f = Σ_b f_b^q x^b` over residue monomials `b` with exponents in `[0, q)`.
//! The trace of the e-iterated Frobenius sends `x^(q-1,...,q-1)` to 1 and every
//! other residue monomial to 0, so `Φ^e(F^e_* f) = f_{(q-1,...,q-1)}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Ring, RingRef};

/// Largest iteration count accepted by [`CartierMap`] and [`decompose`].
pub const MAX_E: u32 = 12;

/// `p^e`, failing on overflow or when `e` exceeds [`MAX_E`].
pub fn frobenius_q(p: u32, e: u32) -> Result<u64> {
    if e > MAX_E {
        return Err(Error::invalid(format!("e = {e} exceeds the cap {MAX_E}")));
    }
    (p as u64).checked_pow(e).ok_or(Error::Overflow)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub e: u32,
    pub q: u64,
    /// Residue monomial `b` to the nonzero part `f_b`.
    pub parts: BTreeMap<Monomial, Polynomial>,
}

impl FrobeniusDecomposition {
    /// `Σ_b f_b^q x^b`.
    pub fn reconstruct(&self, ring: &RingRef) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring);
        for (b, part) in &self.parts {
            out = out.checked_add(&part.frobenius(self.q)?.mul_term(b, 1)?)?;
        }
        Ok(out)
    }

    pub fn part(&self, b: &Monomial) -> Option<&Polynomial> {
        self.parts.get(b)
    }
}

/// Base-q digit split of every exponent vector of `f`.
pub fn decompose(f: &Polynomial, e: u32) -> Result<FrobeniusDecomposition> {
    if e == 0 {
        return Err(Error::invalid("decompose needs e >= 1"));
    }
    let q = frobenius_q(f.ring().p(), e)?;
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (residue, quotient) = split_exponents(m, q);
        groups.entry(residue).or_default().push((quotient, *c as u64));
    }
    let parts = groups
        .into_iter()
        .map(|(b, terms)| (b, Polynomial::from_terms(f.ring(), terms)))
        .collect();
    Ok(FrobeniusDecomposition { e, q, parts })
}

fn split_exponents(m: &Monomial, q: u64) -> (Monomial, Monomial) {
    let mut r = Vec::with_capacity(m.nvars());
    let mut k = Vec::with_capacity(m.nvars());
    for &a in m.exponents() {
        r.push((a as u64 % q) as u32);
        k.push((a as u64 / q) as u32);
    }
    (Monomial::from_exponents(&r), Monomial::from_exponents(&k))
}

/// Generators of the ideal `Φ^e(F^e_* h·R)`: all parts of the decomposition of `h`.
pub fn root_generators(h: &Polynomial, e: u32) -> Result<Vec<Polynomial>> {
    Ok(decompose(h, e)?.parts.into_values().collect())
}

/// The p^{-e}-linear map `f ↦ Φ^e(F^e_* h·f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierMap {
    e: u32,
    h: Polynomial,
}

impl CartierMap {
    pub fn new(e: u32, h: Polynomial) -> Result<Self> {
        if e == 0 {
            return Err(Error::invalid("Cartier map needs e >= 1"));
        }
        frobenius_q(h.ring().p(), e)?;
        if h.is_zero() {
            return Err(Error::invalid("premultiplier must be nonzero"));
        }
        Ok(CartierMap { e, h })
    }

    /// The plain trace `Φ^e` (premultiplier 1).
    pub fn trace(ring: &RingRef, e: u32) -> Result<Self> {
        Self::new(e, Polynomial::one(ring))
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn premultiplier(&self) -> &Polynomial {
        &self.h
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        cartier_apply(self, f)
    }
}

/// `Φ^e(F^e_* h·f)`: the part of `h·f` at residue `(q-1, ..., q-1)`.
pub fn cartier_apply(m: &CartierMap, f: &Polynomial) -> Result<Polynomial> {
    let ring = m.h.ring();
    if !crate::polyring::same_ring(ring, f.ring()) {
        return Err(Error::RingMismatch("Cartier map and argument".into()));
    }
    let hf = m.h.checked_mul(f)?;
    let q = frobenius_q(ring.p(), m.e)?;
    let mut terms = Vec::new();
    'terms: for (mono, c) in hf.terms() {
        let mut k = Vec::with_capacity(mono.nvars());
        for &a in mono.exponents() {
            let a = a as u64;
            if a % q != q - 1 {
                continue 'terms;
            }
            k.push((a / q) as u32);
        }
        terms.push((Monomial::from_exponents(&k), *c as u64));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// The map "apply `first`, then `then`": `(e1 + e2, h2^(p^e1) · h1)`.
pub fn compose(first: &CartierMap, then: &CartierMap) -> Result<CartierMap> {
    let ring = first.h.ring();
    if !crate::polyring::same_ring(ring, then.h.ring()) {
        return Err(Error::RingMismatch("composed Cartier maps".into()));
    }
    let e = first.e.checked_add(then.e).ok_or(Error::Overflow)?;
    let q1 = frobenius_q(ring.p(), first.e)?;
    let h = then.h.frobenius(q1)?.checked_mul(&first.h)?;
    CartierMap::new(e, h)
}

/// Enumeration budget for [`span_check`].
pub const SPAN_CHECK_CAP: u64 = 1 << 20;

/// Exhaustive check, in one variable, that every p^{-e}-linear map whose values
/// on the residue basis `1, x, ..., x^(q-1)` have degree at most `d` is realized
/// as `Φ^e(F^e_* h·-)` for a premultiplier `h` of degree below `q(d+1)`.
pub fn span_check(p: u32, e: u32, d: u32) -> Result<bool> {
    span_check_with_cap(p, e, d, SPAN_CHECK_CAP)
}

pub fn span_check_with_cap(p: u32, e: u32, d: u32, cap: u64) -> Result<bool> {
    if e == 0 {
        return Err(Error::invalid("span_check needs e >= 1"));
    }
    let ring = Ring::new(p as u64, &["x"])?;
    let q = frobenius_q(p, e)?;
    let dim = d as u64 + 1;
    let values_per_slot = (p as u64)
        .checked_pow(dim as u32)
        .ok_or(Error::ResourceCap { cap: cap as usize })?;
    let total = values_per_slot
        .checked_pow(q as u32)
        .filter(|t| *t <= cap)
        .ok_or(Error::ResourceCap { cap: cap as usize })?;

    let value = |mut code: u64| {
        let mut terms = Vec::new();
        for k in 0..dim {
            terms.push((Monomial::var(1, 0, k as u32), code % p as u64));
            code /= p as u64;
        }
        Polynomial::from_terms(&ring, terms)
    };
    let test_top = q * (dim + 1);

    for code in 0..total {
        let mut rest = code;
        let mut values = Vec::with_capacity(q as usize);
        for _ in 0..q {
            values.push(value(rest % values_per_slot));
            rest /= values_per_slot;
        }
        let mut h = Polynomial::zero(&ring);
        for (b, r) in values.iter().enumerate() {
            let shift = Monomial::var(1, 0, (q - 1 - b as u64) as u32);
            h = h.checked_add(&r.frobenius(q)?.mul_term(&shift, 1)?)?;
        }
        if h.total_degree().unwrap_or(0) >= q * dim {
            return Ok(false);
        }
        if h.is_zero() {
            // the zero map is realized by h = 0 itself
            if values.iter().any(|v| !v.is_zero()) {
                return Ok(false);
            }
            continue;
        }
        let map = CartierMap::new(e, h)?;
        for m in 0..test_top {
            let x_m = Polynomial::term(&ring, Monomial::var(1, 0, m as u32), 1);
            let expected = values[(m % q) as usize].mul_term(&Monomial::var(1, 0, (m / q) as u32), 1)?;
            if map.apply(&x_m)? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
