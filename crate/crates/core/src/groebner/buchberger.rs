//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! Polynomials are handled internally as term vectors sorted descending under
//! the working order, always monic once they enter the basis.

use std::cmp::Ordering;

use super::order::MonomialOrder;
use super::GbConfig;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, PrimeField, RingRef};

pub(crate) type Terms = Vec<(Monomial, u32)>;

pub(crate) fn sorted_terms(f: &Polynomial, order: &MonomialOrder) -> Terms {
    let mut t = f.terms().to_vec();
    if !order.is_default_grevlex() {
        t.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

pub(crate) fn to_polynomial(ring: &RingRef, terms: Terms) -> Polynomial {
    Polynomial::from_terms(ring, terms.into_iter().map(|(m, c)| (m, c as u64)))
}

fn make_monic(t: &mut Terms, field: &PrimeField) {
    if let Some(&(_, lc)) = t.first() {
        if lc != 1 {
            let inv = field.inv(lc);
            for (_, c) in t.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
    }
}

/// `f - c * m * g`, with `g` sorted under `order`.
fn sub_scaled(
    f: &[(Monomial, u32)],
    g: &[(Monomial, u32)],
    m: &Monomial,
    c: u32,
    order: &MonomialOrder,
    field: &PrimeField,
) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(t, a)| (t.mul_unchecked(m), field.neg(field.mul(*a, c))));
    let mut next_g = gi.next();
    while i < f.len() || next_g.is_some() {
        match (f.get(i), &next_g) {
            (Some((mf, cf)), Some((mg, cg))) => match order.cmp(mf, mg) {
                Ordering::Greater => {
                    out.push((mf.clone(), *cf));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mg.clone(), *cg));
                    next_g = gi.next();
                }
                Ordering::Equal => {
                    let s = field.add(*cf, *cg);
                    if s != 0 {
                        out.push((mf.clone(), s));
                    }
                    i += 1;
                    next_g = gi.next();
                }
            },
            (Some(t), None) => {
                out.push(t.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(next_g.take().unwrap());
                next_g = gi.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `f` modulo monic, order-sorted `basis`.
pub(crate) fn reduce_terms(
    mut f: Terms,
    basis: &[&Terms],
    order: &MonomialOrder,
    field: &PrimeField,
) -> Terms {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < f.len() {
        let (lm, lc) = (&f[start].0, f[start].1);
        match basis.iter().find(|g| g[0].0.divides(lm)) {
            Some(g) => {
                let q = g[0].0.quotient_of(lm);
                f = sub_scaled(&f[start..], g, &q, lc, order, field);
                start = 0;
            }
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    rem
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    field: PrimeField,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    processed: usize,
    cap: usize,
}

impl<'a> Engine<'a> {
    fn new(order: &'a MonomialOrder, field: PrimeField, cap: usize) -> Self {
        Engine {
            order,
            field,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            processed: 0,
            cap,
        }
    }

    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn active_refs(&self) -> Vec<&Terms> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn reduce(&self, f: Terms) -> Terms {
        let basis = self.active_refs();
        reduce_terms(f, &basis, self.order, &self.field)
    }

    /// Adds an element already known to keep the active set a Gröbner basis
    /// (used when seeding with an existing reduced basis).
    fn seed(&mut self, t: Terms) {
        self.polys.push(t);
        self.active.push(true);
    }

    fn insert(&mut self, f: Terms) {
        let mut r = self.reduce(f);
        if r.is_empty() {
            return;
        }
        make_monic(&mut r, &self.field);
        self.polys.push(r);
        self.active.push(false);
        self.update(self.polys.len() - 1);
    }

    /// Gebauer–Möller update for the new element `h`.
    fn update(&mut self, h: usize) {
        let h_lm = self.lm(h).clone();
        let candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: h,
                lcm: h_lm.lcm(self.lm(g)),
            })
            .collect();

        let mut kept: Vec<Pair> = Vec::new();
        for (k, pair) in candidates.iter().enumerate() {
            let coprime = h_lm.is_coprime(self.lm(pair.i));
            let dominated = candidates[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|other| other.lcm.divides(&pair.lcm));
            if coprime || !dominated {
                kept.push(pair.clone());
            }
        }
        // product criterion: pairs with coprime leading monomials reduce to zero
        kept.retain(|pair| !h_lm.is_coprime(self.lm(pair.i)));

        let old = std::mem::take(&mut self.pairs);
        for pair in old {
            let drop = h_lm.divides(&pair.lcm)
                && h_lm.lcm(self.lm(pair.i)) != pair.lcm
                && h_lm.lcm(self.lm(pair.j)) != pair.lcm;
            if !drop {
                self.pairs.push(pair);
            }
        }
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && h_lm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = self
                .order
                .cmp(&a.lcm, &b.lcm)
                .then((a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Terms {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = f[0].0.quotient_of(&pair.lcm);
        let mg = g[0].0.quotient_of(&pair.lcm);
        let fs: Terms = f[1..]
            .iter()
            .map(|(t, c)| (t.mul_unchecked(&mf), *c))
            .collect();
        sub_scaled(&fs, &g[1..], &mg, 1, self.order, &self.field)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.next_pair() {
            self.processed += 1;
            if self.processed > self.cap {
                return Err(Error::ResourceCap { cap: self.cap });
            }
            let s = self.s_polynomial(&pair);
            self.insert(s);
        }
        Ok(())
    }

    /// Reduced basis, sorted by leading monomial descending.
    fn finish(self) -> Vec<Terms> {
        let mut basis: Vec<Terms> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        basis.sort_by(|a, b| self.order.cmp(&b[0].0, &a[0].0));
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Terms> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, b)| b)
                .collect();
            let mut g = vec![basis[k][0].clone()];
            g.extend(reduce_terms(basis[k][1..].to_vec(), &others, self.order, &self.field));
            out.push(g);
        }
        out
    }
}

fn check_rings(ring: &RingRef, polys: &[Polynomial]) -> Result<()> {
    for f in polys {
        if !crate::polyring::same_ring(ring, f.ring()) {
            return Err(Error::RingMismatch("generators from different rings".into()));
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// monomial descending under `order`. The output is deterministic.
pub fn buchberger(
    ring: &RingRef,
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<Vec<Polynomial>> {
    extend_basis(ring, &[], gens, order, cfg)
}

/// Like [`buchberger`], but `existing` must already be a reduced Gröbner basis
/// under `order`; only pairs involving the new generators are formed.
pub fn extend_basis(
    ring: &RingRef,
    existing: &[Polynomial],
    new: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<Vec<Polynomial>> {
    check_rings(ring, existing)?;
    check_rings(ring, new)?;
    let mut engine = Engine::new(order, *ring.field(), cfg.spair_cap);
    for g in existing {
        let mut t = sorted_terms(g, order);
        make_monic(&mut t, ring.field());
        engine.seed(t);
    }
    for f in new {
        if !f.is_zero() {
            engine.insert(sorted_terms(f, order));
        }
    }
    engine.run()?;
    Ok(engine
        .finish()
        .into_iter()
        .map(|t| to_polynomial(ring, t))
        .collect())
}

/// Remainder of `f` modulo a Gröbner basis under `order`.
pub fn normal_form_with(f: &Polynomial, gb: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let field = *f.ring().field();
    let basis: Vec<Terms> = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = sorted_terms(g, order);
            make_monic(&mut t, &field);
            t
        })
        .collect();
    let refs: Vec<&Terms> = basis.iter().collect();
    let r = reduce_terms(sorted_terms(f, order), &refs, order, &field);
    to_polynomial(f.ring(), r)
}
