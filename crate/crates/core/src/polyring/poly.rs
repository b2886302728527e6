use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A polynomial ring F_p[x_1, ..., x_n] with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(p: u64, vars: &[&str]) -> Result<RingRef> {
        Self::with_names(p, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn with_names(p: u64, vars: Vec<String>) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::invalid(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Picks a fresh variable name not used by this ring, trying `preferred` first.
    pub fn fresh_name(&self, preferred: &[&str]) -> String {
        for cand in preferred {
            if self.var_index(cand).is_none() {
                return cand.to_string();
            }
        }
        (0..)
            .map(|i| format!("t{i}"))
            .find(|c| self.var_index(c).is_none())
            .unwrap()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse polynomial over F_p. Terms are kept sorted by descending grevlex
/// order with no zero coefficients, so structural equality is ideal equality
/// of elements.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), 1)
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &RingRef, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let c = ring.field().reduce(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = field.reduce(c);
            if c == 0 {
                continue;
            }
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[i])
            .max()
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "F_{}[{}] vs F_{}[{}]",
                self.ring.p(),
                self.ring.vars().join(","),
                other.ring.p(),
                other.ring.vars().join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = *self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let adj = |c: u32| if negate_other { field.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), adj(*cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(*ca, adj(*cb));
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), adj(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = *self.ring.field();
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, *c);
        }
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.checked_mul(mb)?;
                let c = field.mul(*ca, *cb);
                let slot = acc.entry(m).or_insert(0);
                *slot = field.add(*slot, c);
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiplies by the single term `c * m`; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let field = *self.ring.field();
        let c = field.reduce(c as u64);
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, a) in &self.terms {
            terms.push((t.checked_mul(m)?, field.mul(*a, c)));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let m = Monomial::one(self.ring.nvars());
        self.mul_term(&m, c).expect("scaling by a constant cannot overflow")
    }

    /// Scales so the grevlex leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    /// `self^k`. Exponents are split into base-p digits and each digit power is
    /// lifted with the Frobenius `a^(p^i)` (a pure exponent scaling over F_p);
    /// digit powers themselves use repeated squaring.
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        if k == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            let field = self.ring.field();
            return Ok(Polynomial::term(&self.ring, m.checked_pow(k)?, field.pow(*c, k)));
        }
        let p = self.ring.p() as u64;
        let mut result = Polynomial::one(&self.ring);
        let mut rest = k;
        let mut shift: u64 = 1;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let piece = self.pow_by_squaring(digit)?.frobenius(shift)?;
                result = result.checked_mul(&piece)?;
            }
            rest /= p;
            if rest > 0 {
                shift = shift.checked_mul(p).ok_or(Error::Overflow)?;
            }
        }
        Ok(result)
    }

    pub(crate) fn pow_by_squaring(&self, mut k: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The q-th power for q a power of p: every exponent is multiplied by q and
    /// coefficients are fixed (c^q = c in F_p).
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        if q == 1 {
            return Ok(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, *c));
        }
        // scaling all exponents by q preserves grevlex order
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Moves the polynomial into `target`, mapping each monomial through `f`.
    pub fn remap<F>(&self, target: &RingRef, mut f: F) -> Result<Polynomial>
    where
        F: FnMut(&Monomial) -> Result<Monomial>,
    {
        if target.p() != self.ring.p() {
            return Err(Error::RingMismatch("characteristics differ".into()));
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((f(m)?, *c as u64));
        }
        Ok(Polynomial::from_terms(target, out))
    }

    /// Replaces variable `var` by `replacement` everywhere.
    pub fn substitute(&self, var: usize, replacement: &Polynomial) -> Result<Polynomial> {
        self.check_ring(replacement)?;
        let nv = self.ring.nvars();
        let mut out = Polynomial::zero(&self.ring);
        // group by exponent of `var` to share powers of the replacement
        let mut by_exp: std::collections::BTreeMap<u32, Vec<(Monomial, u32)>> = Default::default();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = m.exponents()[var];
            let mut exps = rest.exponents().to_vec();
            exps[var] = 0;
            rest = Monomial::from_exponents(&exps);
            by_exp.entry(e).or_default().push((rest, *c));
        }
        for (e, list) in by_exp {
            let coeff = Polynomial::from_terms(
                &self.ring,
                list.into_iter().map(|(m, c)| (m, c as u64)),
            );
            let pw = replacement.pow(e as u64)?;
            out = out.checked_add(&coeff.checked_mul(&pw)?)?;
        }
        debug_assert_eq!(out.ring.nvars(), nv);
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let a = m.exponents()[var];
            let k = field.reduce(a as u64);
            if k == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.push((Monomial::from_exponents(&exps), field.mul(*c, k) as u64));
        }
        Polynomial::from_terms(&self.ring, out)
    }

    /// `self / d` when `d` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(d)?;
        let (lm, lc) = match d.terms.first() {
            None => return Err(Error::invalid("division by zero polynomial")),
            Some((m, c)) => (m.clone(), *c),
        };
        let field = *self.ring.field();
        let inv = field.inv(lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&m);
            let qc = field.mul(c, inv);
            rem = rem.checked_sub(&d.mul_term(&qm, qc)?)?;
            quot.push((qm, qc as u64));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quot)))
    }

    /// Exact division by a single term, if every term is divisible.
    pub fn div_term(&self, m: &Monomial, c: u32) -> Option<Polynomial> {
        let field = self.ring.field();
        let inv = field.inv(c);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, a) in &self.terms {
            if !m.divides(t) {
                return None;
            }
            terms.push((m.quotient_of(t), field.mul(*a, inv)));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }
}

impl fmt::Display for Polynomial {
    /// Canonical emitter: descending grevlex terms joined by " + ",
    /// coefficients in [1, p), unit coefficients omitted on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator sugar for same-ring arithmetic. These panic on ring mismatch or
// exponent overflow; library entry points use the `checked_*` forms.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}
