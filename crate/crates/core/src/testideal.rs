//! Test ideals τ(g^t) of principal pairs as stabilizing sums of Frobenius
//! traces, on polynomial rings and hypersurface quotients A/(w), together with
//! the ν-invariant and an F-pure threshold search.
//!
//! The e-th contribution is `Φ^e(F^e_* h_e·R)` with
//!
//! * classical scheme: `h_e = g^⌈t p^e⌉`
//! * premultiplied scheme: `h_e = c^N g^⌈t(p^e - 1)⌉`
//!
//! and an extra factor `w^(p^e - 1)` on a quotient. Ideals of A/(w) are carried
//! as their preimages in A, so `w` is always among the generators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_q, root_generators, MAX_E};
use crate::groebner::{GbConfig, Ideal};
use crate::polyring::{ceil_scale, Monomial, Polynomial, RationalExponent, RingRef};

/// Largest `p^s` used by the stabilization certificate.
pub const CERTIFICATE_Q_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientKind {
    Polynomial,
    HypersurfaceQuotient,
}

/// A polynomial ring, or a hypersurface quotient A/(w) of one.
#[derive(Debug, Clone)]
pub struct AmbientRing {
    ring: RingRef,
    relation: Option<Polynomial>,
}

impl AmbientRing {
    pub fn polynomial(ring: &RingRef) -> Self {
        AmbientRing {
            ring: ring.clone(),
            relation: None,
        }
    }

    pub fn quotient(w: Polynomial) -> Result<Self> {
        if w.is_zero() || w.is_constant() {
            return Err(Error::invalid("relation must be a nonzero nonunit"));
        }
        Ok(AmbientRing {
            ring: w.ring().clone(),
            relation: Some(w),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        self.relation.as_ref()
    }

    pub fn kind(&self) -> AmbientKind {
        match self.relation {
            None => AmbientKind::Polynomial,
            Some(_) => AmbientKind::HypersurfaceQuotient,
        }
    }

    pub fn is_quotient(&self) -> bool {
        self.relation.is_some()
    }

    /// Normal form modulo the relation (identity on a polynomial ring).
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        match &self.relation {
            None => f.clone(),
            Some(w) => crate::groebner::normal_form(f, std::slice::from_ref(&w.monic())),
        }
    }

    pub fn is_zero_element(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Preimage in the polynomial ring of the ideal generated by `gens`.
    pub fn ideal(&self, mut gens: Vec<Polynomial>) -> Result<Ideal> {
        if let Some(w) = &self.relation {
            gens.push(w.clone());
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal::unit(&self.ring)
    }

    /// A partial derivative of the relation that is nonzero modulo it, chosen
    /// with the smallest (degree, term count, variable index).
    pub fn jacobian_element(&self) -> Result<Polynomial> {
        let w = match &self.relation {
            None => return Ok(Polynomial::one(&self.ring)),
            Some(w) => w,
        };
        (0..self.ring.nvars())
            .map(|i| w.derivative(i))
            .filter(|d| !self.is_zero_element(d))
            .enumerate()
            .min_by_key(|(i, d)| (d.total_degree().unwrap_or(0), d.len(), *i))
            .map(|(_, d)| d)
            .ok_or_else(|| Error::Unsupported("relation has no partial derivative nonzero modulo itself".into()))
    }
}

/// The pair (X, t·div g).
#[derive(Debug, Clone)]
pub struct PrincipalPair {
    ambient: AmbientRing,
    g: Polynomial,
    t: RationalExponent,
}

impl PrincipalPair {
    pub fn new(ambient: AmbientRing, g: Polynomial, t: RationalExponent) -> Result<Self> {
        if !crate::polyring::same_ring(ambient.ring(), g.ring()) {
            return Err(Error::RingMismatch("pair element and ambient ring".into()));
        }
        if ambient.is_zero_element(&g) {
            return Err(Error::invalid("g must be nonzero in the ambient ring"));
        }
        Ok(PrincipalPair { ambient, g, t })
    }

    pub fn polynomial(g: Polynomial, t: RationalExponent) -> Result<Self> {
        Self::new(AmbientRing::polynomial(g.ring()), g, t)
    }

    pub fn ambient(&self) -> &AmbientRing {
        &self.ambient
    }

    pub fn ring(&self) -> &RingRef {
        self.ambient.ring()
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn t(&self) -> RationalExponent {
        self.t
    }

    pub fn with_t(&self, t: RationalExponent) -> Self {
        PrincipalPair { t, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ExponentScheme {
    /// `g^⌈t p^e⌉`, no premultiplier.
    #[default]
    Classical,
    /// `c^N g^⌈t(p^e - 1)⌉`.
    Premultiplied,
}

impl ExponentScheme {
    pub fn name(&self) -> &'static str {
        match self {
            ExponentScheme::Classical => "classical",
            ExponentScheme::Premultiplied => "premultiplied",
        }
    }
}

impl fmt::Display for ExponentScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExponentScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(ExponentScheme::Classical),
            "premultiplied" => Ok(ExponentScheme::Premultiplied),
            _ => Err(Error::invalid(format!("unknown scheme `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TauOptions {
    /// Test element for the premultiplied scheme; defaults to `g` (times a
    /// Jacobian element on a quotient).
    pub c: Option<Polynomial>,
    /// Power of `c`; defaults to `max(1, ⌈t⌉)`.
    pub n_power: Option<u64>,
    /// Number of consecutive equal partial sums required.
    pub window: u32,
    pub e_max: u32,
    /// Defaults to classical on polynomial rings and premultiplied on quotients.
    pub scheme: Option<ExponentScheme>,
    pub gb: GbConfig,
}

impl Default for TauOptions {
    fn default() -> Self {
        TauOptions {
            c: None,
            n_power: None,
            window: 2,
            e_max: 10,
            scheme: None,
            gb: GbConfig::default(),
        }
    }
}

impl TauOptions {
    pub fn with_scheme(scheme: ExponentScheme) -> Self {
        TauOptions {
            scheme: Some(scheme),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct TauResult {
    pub ideal: Ideal,
    /// First E with S_E equal to the final value.
    pub stabilized_at_e: u32,
    /// Contribution ideals for e = 0..=stabilized_at_e.
    pub terms: Vec<Ideal>,
    /// Last e actually computed (the window runs past `stabilized_at_e`).
    pub computed_through_e: u32,
    /// Whether stability was proved, not only observed over the window.
    pub certified: bool,
    pub scheme: ExponentScheme,
}

struct Chain<'a> {
    pair: &'a PrincipalPair,
    scheme: ExponentScheme,
    c_pow: Polynomial,
    cfg: GbConfig,
}

impl Chain<'_> {
    fn premultiplier(&self, q: u64) -> Result<Polynomial> {
        let (g, t) = (&self.pair.g, &self.pair.t);
        let mut h = match self.scheme {
            ExponentScheme::Classical => g.pow(ceil_scale(t, q)?)?,
            ExponentScheme::Premultiplied => self.c_pow.checked_mul(&g.pow(ceil_scale(t, q - 1)?)?)?,
        };
        if let Some(w) = self.pair.ambient.relation() {
            h = h.checked_mul(&w.pow(q - 1)?)?;
        }
        Ok(h)
    }

    fn contribution(&self, e: u32) -> Result<Vec<Polynomial>> {
        let q = frobenius_q(self.pair.ring().p(), e)?;
        let h = self.premultiplier(q)?;
        if e == 0 {
            return Ok(vec![h]);
        }
        let mut gens = root_generators(&h, e)?;
        gens.sort_by(|a, b| b.terms().cmp(a.terms()));
        gens.dedup();
        Ok(gens)
    }

    /// `(s, a_s)` with `p^s ≡ 1 (mod den t)` and `a_s = w^(p^s-1) g^(t(p^s-1))`,
    /// so that the (e+s)-th contribution is `Φ^s(F^s_* a_s·term_e)`.
    fn certificate_factor(&self) -> Result<Option<(u32, Polynomial)>> {
        let p = self.pair.ring().p() as u64;
        let den = self.pair.t.denom();
        if den.is_multiple_of(p) {
            return Ok(None);
        }
        let mut s = 1u32;
        let mut q = p;
        while q % den != 1 % den {
            s += 1;
            q = match q.checked_mul(p) {
                Some(q) if q <= CERTIFICATE_Q_CAP => q,
                _ => return Ok(None),
            };
        }
        if q > CERTIFICATE_Q_CAP {
            return Ok(None);
        }
        let k = self.pair.t.checked_mul_int(q - 1)?.numer();
        let mut a = self.pair.g.pow(k)?;
        if let Some(w) = self.pair.ambient.relation() {
            a = a.checked_mul(&w.pow(q - 1)?)?;
        }
        Ok(Some((s, a)))
    }

    fn certify(&self, sum: &Ideal, s: u32, a: &Polynomial) -> Result<bool> {
        for b in sum.basis(&self.cfg)?.to_vec() {
            for r in root_generators(&a.checked_mul(&b)?, s)? {
                if !sum.contains(&r, &self.cfg)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn validate(opts: &TauOptions) -> Result<()> {
    if opts.window == 0 {
        return Err(Error::invalid("window must be at least 1"));
    }
    if opts.e_max > MAX_E {
        return Err(Error::invalid(format!("e_max = {} exceeds the cap {MAX_E}", opts.e_max)));
    }
    Ok(())
}

/// τ(g^t) on a polynomial ring.
pub fn tau_polynomial(pair: &PrincipalPair, opts: &TauOptions) -> Result<TauResult> {
    if pair.ambient.is_quotient() {
        return Err(Error::invalid("tau_polynomial needs a polynomial ambient ring"));
    }
    tau(pair, opts)
}

/// τ(g^t) on a hypersurface quotient A/(w), returned as an ideal of A containing w.
pub fn tau_quotient(pair: &PrincipalPair, opts: &TauOptions) -> Result<TauResult> {
    if !pair.ambient.is_quotient() {
        return Err(Error::invalid("tau_quotient needs a quotient ambient ring"));
    }
    tau(pair, opts)
}

/// τ(g^t) on either kind of ambient ring.
pub fn tau(pair: &PrincipalPair, opts: &TauOptions) -> Result<TauResult> {
    validate(opts)?;
    let ambient = &pair.ambient;
    let ring = ambient.ring();
    let scheme = opts.scheme.unwrap_or(if ambient.is_quotient() {
        ExponentScheme::Premultiplied
    } else {
        ExponentScheme::Classical
    });
    if ambient.is_quotient() && scheme == ExponentScheme::Classical {
        return Err(Error::Unsupported(
            "the classical scheme needs a regular ambient ring; use premultiplied on a quotient".into(),
        ));
    }

    if pair.t.is_zero() && !ambient.is_quotient() {
        let unit = ambient.unit_ideal();
        return Ok(TauResult {
            ideal: unit.clone(),
            stabilized_at_e: 0,
            terms: vec![unit],
            computed_through_e: 0,
            certified: true,
            scheme,
        });
    }

    let c = match &opts.c {
        Some(c) => {
            if !crate::polyring::same_ring(ring, c.ring()) {
                return Err(Error::RingMismatch("test element and ambient ring".into()));
            }
            if ambient.is_zero_element(c) {
                return Err(Error::invalid("test element must be nonzero in the ambient ring"));
            }
            c.clone()
        }
        None => pair.g.checked_mul(&ambient.jacobian_element()?)?,
    };
    let n = opts.n_power.unwrap_or_else(|| pair.t.ceil().max(1));
    let chain = Chain {
        pair,
        scheme,
        c_pow: match scheme {
            ExponentScheme::Classical => Polynomial::one(ring),
            ExponentScheme::Premultiplied => c.pow(n)?,
        },
        cfg: opts.gb,
    };
    let cert = chain.certificate_factor()?;

    let first = chain.contribution(0)?;
    let mut terms = vec![ambient.ideal(first.clone())?];
    let mut sum = ambient.ideal(first)?;
    let mut partials = vec![sum.clone()];
    let mut stable_since = 0u32;
    let mut cert_failed_for: Option<u32> = None;

    let done = |sum: Ideal, mut terms: Vec<Ideal>, at: u32, through: u32, certified: bool| {
        terms.truncate(at as usize + 1);
        TauResult {
            ideal: sum,
            stabilized_at_e: at,
            terms,
            computed_through_e: through,
            certified,
            scheme,
        }
    };

    if sum.is_unit(&opts.gb)? {
        return Ok(done(sum, terms, 0, 0, true));
    }
    for e in 1..=opts.e_max {
        let gens = chain.contribution(e)?;
        if let Some(next) = sum.try_extend(&gens, &opts.gb)? {
            sum = next;
            stable_since = e;
        }
        terms.push(ambient.ideal(gens)?);
        partials.push(sum.clone());
        if sum.is_unit(&opts.gb)? {
            return Ok(done(sum, terms, e, e, true));
        }
        if e - stable_since < opts.window {
            continue;
        }
        match &cert {
            None => return Ok(done(sum, terms, stable_since, e, false)),
            Some((s, a)) => {
                if e + 1 >= *s && cert_failed_for != Some(stable_since) {
                    if chain.certify(&sum, *s, a)? {
                        return Ok(done(sum, terms, stable_since, e, true));
                    }
                    cert_failed_for = Some(stable_since);
                }
            }
        }
    }
    let last_chain = partials
        .iter()
        .map(|s| s.canonical_string(&opts.gb))
        .collect::<Result<Vec<_>>>()?;
    Err(Error::NotStabilized {
        e_max: opts.e_max,
        last_chain,
    })
}

/// Largest r with `g^r ∉ (x_1^q, ..., x_n^q)`, q = p^e.
pub fn nu_value(g: &Polynomial, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::invalid("nu_value needs e >= 1"));
    }
    if g.constant_term() != 0 {
        return Err(Error::invalid("g must vanish at the origin"));
    }
    let ring = g.ring();
    let q = frobenius_q(ring.p(), e)?;
    let bound = (ring.nvars() as u64)
        .checked_mul(q - 1)
        .and_then(|b| b.checked_add(1))
        .ok_or(Error::Overflow)?;
    // g^lo stays outside the Frobenius power, g^hi lies inside
    let (mut lo, mut hi) = (0u64, bound);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if truncated_pow(g, mid, q)?.is_zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

fn below(m: &Monomial, cap: u64) -> bool {
    m.exponents().iter().all(|&a| (a as u64) < cap)
}

fn truncate(f: &Polynomial, cap: u64) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| below(m, cap))
        .map(|(m, c)| (m.clone(), *c as u64));
    Polynomial::from_terms(f.ring(), terms)
}

fn truncated_mul(a: &Polynomial, b: &Polynomial, cap: u64) -> Result<Polynomial> {
    let field = *a.ring().field();
    let mut acc: std::collections::HashMap<Monomial, u32> = Default::default();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let m = ma.checked_mul(mb)?;
            if below(&m, cap) {
                let slot = acc.entry(m).or_insert(0);
                *slot = field.add(*slot, field.mul(*ca, *cb));
            }
        }
    }
    Ok(Polynomial::from_terms(
        a.ring(),
        acc.into_iter().map(|(m, c)| (m, c as u64)),
    ))
}

/// `g^k` modulo the monomial ideal `(x_1^cap, ..., x_n^cap)`, using base-p
/// digits of k so that each factor is a Frobenius lift of a small power.
fn truncated_pow(g: &Polynomial, k: u64, cap: u64) -> Result<Polynomial> {
    let p = g.ring().p() as u64;
    let mut result = Polynomial::one(g.ring());
    let mut rest = k;
    let mut shift = 1u64;
    while rest > 0 && !result.is_zero() {
        let digit = rest % p;
        if digit > 0 {
            if shift >= cap {
                return Ok(Polynomial::zero(g.ring()));
            }
            let inner_cap = cap.div_ceil(shift);
            let base = truncate(g, inner_cap);
            let mut piece = Polynomial::one(g.ring());
            for _ in 0..digit {
                piece = truncated_mul(&piece, &base, inner_cap)?;
            }
            let lifted = truncate(&piece.frobenius(shift)?, cap);
            result = truncated_mul(&result, &lifted, cap)?;
        }
        rest /= p;
        shift = shift.saturating_mul(p);
    }
    Ok(result)
}

/// Bracket for the F-pure threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptInterval {
    pub lo: RationalExponent,
    pub hi: RationalExponent,
    /// ν(e) for e = 1..=e_max.
    pub nu: Vec<u64>,
    /// Candidates whose τ was computed, with the unit-ideal verdict.
    pub tested: Vec<(RationalExponent, bool)>,
}

/// Brackets fpt(g) within `[ν/q, (ν+1)/q]` at q = p^e_max, then tightens with
/// τ unit-ideal tests at fractions of denominator at most `denominator_bound`.
pub fn fpt_search(g: &Polynomial, e_max: u32, denominator_bound: u64, opts: &TauOptions) -> Result<FptInterval> {
    if e_max == 0 {
        return Err(Error::invalid("fpt_search needs e_max >= 1"));
    }
    if denominator_bound == 0 {
        return Err(Error::invalid("denominator bound must be positive"));
    }
    if g.is_zero() {
        return Err(Error::invalid("g must be nonzero"));
    }
    let nu = (1..=e_max).map(|e| nu_value(g, e)).collect::<Result<Vec<_>>>()?;
    let q = frobenius_q(g.ring().p(), e_max)?;
    let last = *nu.last().expect("e_max >= 1");
    let lo0 = RationalExponent::new(last, q)?;
    let hi0 = RationalExponent::new(last + 1, q)?;

    let mut candidates = Vec::new();
    for b in 1..=denominator_bound {
        let a_min = (lo0.numer() as u128 * b as u128 / lo0.denom() as u128) as u64;
        let a_max = (hi0.numer() as u128 * b as u128 / hi0.denom() as u128) as u64;
        for a in a_min..=a_max {
            let c = RationalExponent::new(a, b)?;
            if c > lo0 && c <= hi0 {
                candidates.push(c);
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    let pair = PrincipalPair::polynomial(g.clone(), RationalExponent::zero())?;
    let mut lo = lo0;
    let mut hi = hi0;
    let mut tested = Vec::new();
    for c in candidates {
        let res = tau_polynomial(&pair.with_t(c), opts)?;
        let unit = res.ideal.is_unit(&opts.gb)?;
        tested.push((c, unit));
        if unit {
            lo = c;
        } else if res.certified {
            hi = c;
            break;
        }
    }
    Ok(FptInterval { lo, hi, nu, tested })
}
