//! Kummer covers `S = R[z]/(z^n - f)` with n prime to p: field trace,
//! ramification, pullback of principal pairs, trace images, and the checks
//! relating test ideals and multiplier ideals on S and R.
//!
//! Canonical modules are carried inside the fraction field: `ω_R = R` and
//! `ω_S = z^{-(n-1)}·S`, the dual of S under the trace pairing.

use std::fmt;

use crate::error::{Error, Result};
use crate::frobenius::root_generators;
use crate::groebner::{format_generators, GbConfig, Ideal};
use crate::multoracle::{howald_multiplier, multiplier_exponents, NewtonData};
use crate::polyring::{gcd, same_ring, Monomial, Polynomial, RationalExponent, Ring, RingRef};
use crate::testideal::{tau, AmbientRing, PrincipalPair, TauOptions, TauResult};

/// Branch data shapes for which irreducibility of `z^n - f` is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverShape {
    /// `f = x_i`.
    Coordinate(usize),
    /// `f` a product of at least two distinct coordinates.
    CoordinateProduct(Vec<usize>),
    /// Any other `f`; irreducibility asserted by the caller.
    Asserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Presentation {
    /// S identified with F_p[z, other variables] through `x_i = z^n`.
    Substituted(usize),
    /// S as R[z] modulo `z^n - f`, z the last variable.
    Adjoined,
}

#[derive(Debug, Clone)]
pub struct KummerCover {
    base: AmbientRing,
    n: u32,
    f: Polynomial,
    shape: CoverShape,
    presentation: Presentation,
    cover_ring: RingRef,
    cover_ambient: Option<AmbientRing>,
}

/// `Σ a_i z^i` with coefficients in the base ring, `0 <= i < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverElement {
    coords: Vec<Polynomial>,
}

impl CoverElement {
    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coords
    }
}

impl fmt::Display for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})*z^{i}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn classify(f: &Polynomial) -> CoverShape {
    if f.len() == 1 && f.terms()[0].1 == 1 {
        let exps = f.terms()[0].0.exponents();
        if exps.iter().all(|&a| a <= 1) {
            let support: Vec<usize> = (0..exps.len()).filter(|&i| exps[i] == 1).collect();
            match support.len() {
                0 => {}
                1 => return CoverShape::Coordinate(support[0]),
                _ => return CoverShape::CoordinateProduct(support),
            }
        }
    }
    CoverShape::Asserted
}

impl KummerCover {
    /// Cover with branch element a coordinate or a product of distinct coordinates.
    pub fn new(base: AmbientRing, n: u32, f: Polynomial) -> Result<Self> {
        if classify(&f) == CoverShape::Asserted {
            return Err(Error::Unsupported(format!(
                "irreducibility of z^{n} - ({f}) is not known; use an asserted cover"
            )));
        }
        Self::build(base, n, f)
    }

    /// Cover for arbitrary branch data; the caller asserts `z^n - f` is irreducible.
    pub fn new_asserted(base: AmbientRing, n: u32, f: Polynomial) -> Result<Self> {
        Self::build(base, n, f)
    }

    pub fn over_polynomial_ring(n: u32, f: Polynomial) -> Result<Self> {
        Self::new(AmbientRing::polynomial(f.ring()), n, f)
    }

    fn build(base: AmbientRing, n: u32, f: Polynomial) -> Result<Self> {
        let ring = base.ring().clone();
        if !same_ring(&ring, f.ring()) {
            return Err(Error::RingMismatch("branch element and base ring".into()));
        }
        if n < 2 {
            return Err(Error::invalid("cover degree must be at least 2"));
        }
        if gcd(n as u64, ring.p() as u64) != 1 {
            return Err(Error::invalid(format!("degree {n} is not prime to p = {}", ring.p())));
        }
        let f = base.reduce(&f);
        if f.is_zero() || f.is_constant() {
            return Err(Error::invalid("branch element must be a nonzero nonunit"));
        }
        let shape = classify(&f);
        let z_name = ring.fresh_name(&["z", "u", "v", "s"]);
        let (presentation, cover_ring) = match (&shape, base.is_quotient()) {
            (CoverShape::Coordinate(i), false) => {
                let mut names = vec![z_name];
                names.extend(ring.vars().iter().enumerate().filter(|(j, _)| j != i).map(|(_, v)| v.clone()));
                (Presentation::Substituted(*i), Ring::with_names(ring.p() as u64, names)?)
            }
            _ => {
                let mut names = ring.vars().to_vec();
                names.push(z_name);
                (Presentation::Adjoined, Ring::with_names(ring.p() as u64, names)?)
            }
        };
        let mut cover = KummerCover {
            base,
            n,
            f,
            shape,
            presentation,
            cover_ring: cover_ring.clone(),
            cover_ambient: None,
        };
        cover.cover_ambient = match (presentation, cover.base.is_quotient()) {
            (Presentation::Substituted(_), _) => Some(AmbientRing::polynomial(&cover_ring)),
            (Presentation::Adjoined, false) => {
                let w = cover.z().pow(n as u64)?.checked_sub(&cover.lift(&cover.f)?)?;
                Some(AmbientRing::quotient(w)?)
            }
            (Presentation::Adjoined, true) => None,
        };
        Ok(cover)
    }

    pub fn base(&self) -> &AmbientRing {
        &self.base
    }

    pub fn base_ring(&self) -> &RingRef {
        self.base.ring()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn shape(&self) -> &CoverShape {
        &self.shape
    }

    /// Ring in which elements of S are written.
    pub fn cover_ring(&self) -> &RingRef {
        &self.cover_ring
    }

    /// S as an ambient ring for test-ideal computations: a polynomial ring for
    /// covers along a coordinate, a hypersurface quotient otherwise.
    pub fn cover_ambient(&self) -> Result<&AmbientRing> {
        self.cover_ambient
            .as_ref()
            .ok_or_else(|| Error::Unsupported("covers of a quotient base are not hypersurfaces".into()))
    }

    /// Whether S is presented as a polynomial ring.
    pub fn is_regular_presentation(&self) -> bool {
        matches!(self.presentation, Presentation::Substituted(_))
    }

    fn z_index(&self) -> usize {
        match self.presentation {
            Presentation::Substituted(_) => 0,
            Presentation::Adjoined => self.cover_ring.nvars() - 1,
        }
    }

    /// The cover variable as an element of the cover ring.
    pub fn z(&self) -> Polynomial {
        Polynomial::var(&self.cover_ring, self.z_index())
    }

    pub fn z_name(&self) -> &str {
        &self.cover_ring.vars()[self.z_index()]
    }

    /// Image of a base element in the cover ring.
    pub fn lift(&self, r: &Polynomial) -> Result<Polynomial> {
        if !same_ring(self.base_ring(), r.ring()) {
            return Err(Error::RingMismatch("element is not in the base ring".into()));
        }
        let n = self.n;
        match self.presentation {
            Presentation::Substituted(i) => r.remap(&self.cover_ring, |m| {
                let e = m.exponents();
                let zexp = e[i].checked_mul(n).ok_or(Error::Overflow)?;
                let mut out = vec![zexp];
                out.extend(e.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| *a));
                Ok(Monomial::from_exponents(&out))
            }),
            Presentation::Adjoined => r.remap(&self.cover_ring, |m| {
                let mut out = m.exponents().to_vec();
                out.push(0);
                Ok(Monomial::from_exponents(&out))
            }),
        }
    }

    /// Coordinates of a cover-ring polynomial in the basis `1, z, ..., z^(n-1)`.
    pub fn element(&self, s: &Polynomial) -> Result<CoverElement> {
        if !same_ring(&self.cover_ring, s.ring()) {
            return Err(Error::RingMismatch("element is not in the cover ring".into()));
        }
        let n = self.n as usize;
        let base = self.base_ring();
        let mut buckets: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); n];
        // terms z^(qn + r)·m with q > 0 on the adjoined presentation become f^q·m·z^r
        let mut wrapped: Vec<(usize, u32, Monomial, u32)> = Vec::new();
        for (m, c) in s.terms() {
            let e = m.exponents();
            let a = e[self.z_index()];
            let (slot, k) = ((a % self.n) as usize, a / self.n);
            match self.presentation {
                Presentation::Substituted(i) => {
                    let mut out = Vec::with_capacity(base.nvars());
                    let mut rest = e[1..].iter();
                    for j in 0..base.nvars() {
                        out.push(if j == i { k } else { *rest.next().expect("arity") });
                    }
                    buckets[slot].push((Monomial::from_exponents(&out), *c as u64));
                }
                Presentation::Adjoined => {
                    let rest = Monomial::from_exponents(&e[..e.len() - 1]);
                    if k == 0 {
                        buckets[slot].push((rest, *c as u64));
                    } else {
                        wrapped.push((slot, k, rest, *c));
                    }
                }
            }
        }
        let mut coords: Vec<Polynomial> = buckets
            .into_iter()
            .map(|t| Polynomial::from_terms(base, t))
            .collect();
        for (slot, k, rest, c) in wrapped {
            let term = self.f.pow(k as u64)?.mul_term(&rest, c)?;
            coords[slot] = coords[slot].checked_add(&term)?;
        }
        Ok(self.normalize(coords))
    }

    fn normalize(&self, coords: Vec<Polynomial>) -> CoverElement {
        CoverElement {
            coords: coords.iter().map(|a| self.base.reduce(a)).collect(),
        }
    }

    pub fn from_coordinates(&self, coords: Vec<Polynomial>) -> Result<CoverElement> {
        if coords.len() != self.n as usize {
            return Err(Error::invalid(format!("expected {} coordinates", self.n)));
        }
        if coords.iter().any(|a| !same_ring(self.base_ring(), a.ring())) {
            return Err(Error::RingMismatch("coordinates must lie in the base ring".into()));
        }
        Ok(self.normalize(coords))
    }

    /// The cover-ring polynomial `Σ a_i z^i`.
    pub fn to_polynomial(&self, s: &CoverElement) -> Result<Polynomial> {
        let z = self.z();
        let mut out = Polynomial::zero(&self.cover_ring);
        for (i, a) in s.coords.iter().enumerate() {
            out = out.checked_add(&self.lift(a)?.checked_mul(&z.pow(i as u64)?)?)?;
        }
        Ok(out)
    }

    pub fn one(&self) -> CoverElement {
        self.base_scalar(&Polynomial::one(self.base_ring()))
    }

    /// `r·1` for r in the base ring.
    pub fn base_scalar(&self, r: &Polynomial) -> CoverElement {
        let mut coords = vec![Polynomial::zero(self.base_ring()); self.n as usize];
        coords[0] = r.clone();
        self.normalize(coords)
    }

    /// `z^k` in coordinates.
    pub fn z_power(&self, k: u64) -> Result<CoverElement> {
        let mut coords = vec![Polynomial::zero(self.base_ring()); self.n as usize];
        coords[(k % self.n as u64) as usize] = self.f.pow(k / self.n as u64)?;
        Ok(self.normalize(coords))
    }

    pub fn mul(&self, a: &CoverElement, b: &CoverElement) -> Result<CoverElement> {
        let n = self.n as usize;
        let mut coords = vec![Polynomial::zero(self.base_ring()); n];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                let mut prod = ai.checked_mul(bj)?;
                if i + j >= n {
                    prod = prod.checked_mul(&self.f)?;
                }
                let k = (i + j) % n;
                coords[k] = coords[k].checked_add(&prod)?;
            }
        }
        Ok(self.normalize(coords))
    }

    pub fn add(&self, a: &CoverElement, b: &CoverElement) -> Result<CoverElement> {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.checked_add(y))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normalize(coords))
    }
}

/// Trace of multiplication by `s` on the basis `1, z, ..., z^(n-1)`.
pub fn field_trace(cover: &KummerCover, s: &CoverElement) -> Result<Polynomial> {
    let mut tr = Polynomial::zero(cover.base_ring());
    for j in 0..cover.n as u64 {
        let col = cover.mul(s, &cover.z_power(j)?)?;
        tr = tr.checked_add(&col.coords[j as usize])?;
    }
    Ok(cover.base.reduce(&tr))
}

#[derive(Debug, Clone)]
pub struct RamificationDivisor {
    /// Local equation of the branch divisor upstairs.
    pub element: Polynomial,
    pub multiplicity: u32,
    /// The derivative `n z^(n-1)` of the defining relation.
    pub different: Polynomial,
}

impl fmt::Display for RamificationDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*div({})", self.multiplicity, self.element)
    }
}

/// `Ram = (n-1)·div(z)`.
pub fn ramification_divisor(cover: &KummerCover) -> Result<RamificationDivisor> {
    let z = cover.z();
    let different = z.pow(cover.n as u64 - 1)?.scale(cover.n);
    Ok(RamificationDivisor {
        element: z,
        multiplicity: cover.n - 1,
        different,
    })
}

/// Whether `(a) ∩ (b) = (ab)` in a polynomial ring.
pub fn coprime(a: &Polynomial, b: &Polynomial, cfg: &GbConfig) -> Result<bool> {
    let meet = Ideal::principal(a).intersect(&Ideal::principal(b), cfg)?;
    meet.equals(&Ideal::principal(&a.checked_mul(b)?), cfg)
}

/// Pullback of `t·div g` along the cover, without subtracting ramification:
/// `(z, t·n)` when g is the branch element, `(g, t)` when g is prime to it.
pub fn pullback_pair(cover: &KummerCover, pair: &PrincipalPair, cfg: &GbConfig) -> Result<PrincipalPair> {
    let ambient = cover.cover_ambient()?.clone();
    if pair.ambient().is_quotient() || !same_ring(cover.base_ring(), pair.ring()) {
        return Err(Error::Unsupported("pair must live on the polynomial base ring".into()));
    }
    let g = pair.g();
    if g.monic() == cover.f.monic() {
        return PrincipalPair::new(ambient, cover.z(), pair.t().checked_mul_int(cover.n as u64)?);
    }
    if !coprime(g, &cover.f, cfg)? {
        return Err(Error::Unsupported(format!(
            "`{g}` is neither the branch element nor prime to it"
        )));
    }
    PrincipalPair::new(ambient, cover.lift(g)?, pair.t())
}

/// A fractional ideal `den^{-k}·numerator` of the base ring.
#[derive(Debug, Clone)]
pub struct FractionalIdealData {
    numerator: Ideal,
    denominator: Polynomial,
    exponent: u32,
}

impl FractionalIdealData {
    /// Builds and normalizes to the smallest exponent.
    pub fn new(numerator: Ideal, denominator: Polynomial, exponent: u32, cfg: &GbConfig) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        let mut frac = FractionalIdealData {
            numerator,
            denominator: denominator.monic(),
            exponent,
        };
        while frac.exponent > 0 && !frac.numerator.is_zero() {
            let mut divided = Vec::new();
            for g in frac.numerator.basis(cfg)? {
                match g.exact_div(&frac.denominator)? {
                    Some(h) => divided.push(h),
                    None => break,
                }
            }
            if divided.len() != frac.numerator.basis(cfg)?.len() {
                break;
            }
            frac.numerator = Ideal::new(frac.numerator.ring(), divided)?;
            frac.exponent -= 1;
        }
        if frac.exponent == 0 {
            frac.denominator = Polynomial::one(frac.numerator.ring());
        }
        Ok(frac)
    }

    pub fn integral(ideal: Ideal) -> Self {
        let one = Polynomial::one(ideal.ring());
        FractionalIdealData {
            numerator: ideal,
            denominator: one,
            exponent: 0,
        }
    }

    pub fn numerator(&self) -> &Ideal {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integral(&self) -> bool {
        self.exponent == 0
    }

    /// Both sides over a common denominator: `(den^{k2}·self, den^{k1}·other)`.
    fn cross(&self, other: &FractionalIdealData) -> Result<(Ideal, Ideal)> {
        let den = match (self.exponent, other.exponent) {
            (0, 0) => return Ok((self.numerator.clone(), other.numerator.clone())),
            (0, _) => &other.denominator,
            (_, 0) => &self.denominator,
            _ if self.denominator == other.denominator => &self.denominator,
            _ => return Err(Error::Unsupported("fractional ideals with different denominators".into())),
        };
        let scale = |i: &Ideal, k: u32| -> Result<Ideal> {
            let d = den.pow(k as u64)?;
            Ideal::new(i.ring(), i.generators().iter().map(|g| g.checked_mul(&d)).collect::<Result<_>>()?)
        };
        Ok((scale(&self.numerator, other.exponent)?, scale(&other.numerator, self.exponent)?))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &FractionalIdealData, cfg: &GbConfig) -> Result<bool> {
        let (a, b) = self.cross(other)?;
        a.contains_ideal(&b, cfg)
    }

    pub fn equals(&self, other: &FractionalIdealData, cfg: &GbConfig) -> Result<bool> {
        let (a, b) = self.cross(other)?;
        a.equals(&b, cfg)
    }

    /// `(g1, ...)` or `(g1, ...) / (d)^k`.
    pub fn canonical_string(&self, cfg: &GbConfig) -> Result<String> {
        let num = format_generators(self.numerator.basis(cfg)?);
        Ok(match self.exponent {
            0 => num,
            1 => format!("{num} / ({})", self.denominator),
            k => format!("{num} / ({})^{k}", self.denominator),
        })
    }
}

/// `Tr(z^{-k}·Σ S·s_j)` as a fractional ideal of the base ring with
/// denominator f: `Tr(z^{-k} u) = n·u_{k mod n}·f^{-⌊k/n⌋}`.
pub fn trace_module(
    cover: &KummerCover,
    k: u64,
    gens: &[CoverElement],
    cfg: &GbConfig,
) -> Result<FractionalIdealData> {
    let n = cover.n as u64;
    let slot = (k % n) as usize;
    let mut out = Vec::new();
    for s in gens {
        for i in 0..n {
            let u = cover.mul(&cover.z_power(i)?, s)?;
            let tr = u.coords[slot].scale(cover.n);
            if !tr.is_zero() {
                out.push(tr);
            }
        }
    }
    let numerator = cover.base.ideal(out)?;
    FractionalIdealData::new(numerator, cover.f.clone(), (k / n) as u32, cfg)
}

#[derive(Debug, Clone)]
pub struct TransformReport {
    /// `Tr(τ(ω_S; π*Γ))`.
    pub lhs: FractionalIdealData,
    /// `τ(ω_R; Γ)`.
    pub rhs: Ideal,
    pub equal: bool,
    pub pulled_back: PrincipalPair,
    pub cover_tau: TauResult,
    pub base_tau: TauResult,
}

fn cover_options(opts: &TauOptions) -> TauOptions {
    TauOptions {
        c: None,
        n_power: None,
        scheme: None,
        ..opts.clone()
    }
}

/// Compares `Tr(τ(ω_S; π*Γ))` with `τ(ω_R; Γ)`.
pub fn verify_tau_transform(cover: &KummerCover, pair: &PrincipalPair, opts: &TauOptions) -> Result<TransformReport> {
    let cfg = &opts.gb;
    let pulled_back = pullback_pair(cover, pair, cfg)?;
    let cover_tau = tau(&pulled_back, &cover_options(opts))?;
    let gens = cover_tau
        .ideal
        .basis(cfg)?
        .iter()
        .map(|s| cover.element(s))
        .collect::<Result<Vec<_>>>()?;
    let lhs = trace_module(cover, cover.n as u64 - 1, &gens, cfg)?;
    let base_tau = tau(pair, opts)?;
    let rhs = base_tau.ideal.clone();
    let equal = lhs.equals(&FractionalIdealData::integral(rhs.clone()), cfg)?;
    Ok(TransformReport {
        lhs,
        rhs,
        equal,
        pulled_back,
        cover_tau,
        base_tau,
    })
}

#[derive(Debug, Clone)]
pub struct TraceImageReport {
    /// `J_π = Tr(ω_S)` inside `ω_R = R`.
    pub image: FractionalIdealData,
    /// `Φ(F_* J_π) ⊆ J_π`.
    pub phi_stable: bool,
    /// `J_π = ω_R`.
    pub surjective: bool,
}

/// Trace image of `ω_S = z^{-(n-1)}S` together with its Φ-compatibility.
pub fn trace_image(cover: &KummerCover, cfg: &GbConfig) -> Result<TraceImageReport> {
    let image = trace_module(cover, cover.n as u64 - 1, &[cover.one()], cfg)?;
    let phi_stable = phi_stable(&cover.base, &image, cfg)?;
    let surjective = image.is_integral() && image.numerator().is_unit(cfg)?;
    Ok(TraceImageReport {
        image,
        phi_stable,
        surjective,
    })
}

/// `Φ(F_* J) ⊆ J` for `J = d^{-k} I`, using `Φ(F_* d^{-k} a) = d^{-k} Φ(F_* d^{k(p-1)} a)`.
pub fn phi_stable(ambient: &AmbientRing, frac: &FractionalIdealData, cfg: &GbConfig) -> Result<bool> {
    let p = ambient.ring().p() as u64;
    let mut h = frac.denominator.pow(frac.exponent as u64 * (p - 1))?;
    if let Some(w) = ambient.relation() {
        h = h.checked_mul(&w.pow(p - 1)?)?;
    }
    let num = frac.numerator();
    for a in num.basis(cfg)?.to_vec() {
        for r in root_generators(&h.checked_mul(&a)?, 1)? {
            if !num.contains(&r, cfg)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct ContainmentReport {
    /// `τ(ω_R)`.
    pub tau: TauResult,
    pub image: FractionalIdealData,
    pub contained: bool,
}

/// Whether `τ(ω_R) ⊆ J_π`.
pub fn verify_containment_tau_in_image(cover: &KummerCover, opts: &TauOptions) -> Result<ContainmentReport> {
    let cfg = &opts.gb;
    let image = trace_image(cover, cfg)?.image;
    let ring = cover.base_ring();
    let trivial = PrincipalPair::new(cover.base.clone(), Polynomial::one(ring), RationalExponent::zero())?;
    let tau = tau(&trivial, &cover_options(opts))?;
    let contained = image.contains(&FractionalIdealData::integral(tau.ideal.clone()), cfg)?;
    Ok(ContainmentReport { tau, image, contained })
}

#[derive(Debug, Clone)]
pub struct MultiplierTransformReport {
    /// `Tr(J(S; π*Δ_X - Ram))`.
    pub lhs: FractionalIdealData,
    /// `J(R; Δ_X)`.
    pub rhs: Ideal,
    pub equal: bool,
    /// Coefficients of `Δ_Y` on the cover variables, as `(name, num/den)`.
    pub cover_divisor: Vec<(String, String)>,
    /// Exponents of the monomial generator of `J(S; Δ_Y)`.
    pub cover_multiplier: Vec<i128>,
}

fn signed_rational(num: i128, den: u64) -> String {
    let g = gcd(num.unsigned_abs() as u64, den).max(1) as i128;
    format!("{}/{}", num / g, den as i128 / g)
}

/// Compares `Tr(J(S; Δ_Y))` with `J(R; Δ_X)` for `Δ_X = t·div g`, g a
/// monomial, and `Δ_Y = π*Δ_X - (n-1)·div z`, on a cover along a coordinate.
pub fn verify_multiplier_transform(
    cover: &KummerCover,
    pair: &PrincipalPair,
    cfg: &GbConfig,
) -> Result<MultiplierTransformReport> {
    let i = match cover.presentation {
        Presentation::Substituted(i) => i,
        Presentation::Adjoined => {
            return Err(Error::Unsupported("multiplier transform needs a cover along a coordinate".into()))
        }
    };
    if pair.ambient().is_quotient() || !same_ring(cover.base_ring(), pair.ring()) {
        return Err(Error::Unsupported("pair must live on the polynomial base ring".into()));
    }
    let data = NewtonData::from_monomial(pair.g(), pair.t())?;
    let (num, den) = (pair.t().numer() as i128, pair.t().denom());
    let n = cover.n as i128;

    // cover variables: z first, then the base variables other than x_i
    let v = data.exponents();
    let mut nums = vec![num * n * v[i] as i128 - (n - 1) * den as i128];
    nums.extend((0..v.len()).filter(|&j| j != i).map(|j| num * v[j] as i128));
    let exps = multiplier_exponents(&nums, den);
    let cover_divisor = cover
        .cover_ring()
        .vars()
        .iter()
        .zip(&nums)
        .map(|(name, &c)| (name.clone(), signed_rational(c, den)))
        .collect();

    let k = (-exps[0]).max(0) as u64;
    let mut mono: Vec<u32> = exps.iter().map(|&e| e.max(0) as u32).collect();
    mono[0] = exps[0].max(0) as u32;
    let gen = Polynomial::term(cover.cover_ring(), Monomial::from_exponents(&mono), 1);
    let lhs = trace_module(cover, k, &[cover.element(&gen)?], cfg)?;
    let rhs = howald_multiplier(&data)?;
    let equal = lhs.equals(&FractionalIdealData::integral(rhs.clone()), cfg)?;
    Ok(MultiplierTransformReport {
        lhs,
        rhs,
        equal,
        cover_divisor,
        cover_multiplier: exps,
    })
}

#[derive(Debug, Clone)]
pub struct Lemma44Presentation {
    /// `R[α]`.
    pub ring: RingRef,
    /// `α^n + fα + f`.
    pub relation: Polynomial,
    /// `α + 1`.
    pub unit_witness: Polynomial,
    /// An inverse of `α + 1` modulo the relation.
    pub inverse: Polynomial,
    /// `α^n ≡ -f(α + 1)` modulo the relation.
    pub power_identity: bool,
    /// `(α + 1)·inverse ≡ 1` modulo the relation.
    pub unit_verified: bool,
    /// `n·div(α) = div(f)`, from the two identities above.
    pub divisor_identity: bool,
}

/// The presentation `R[α]/(α^n + fα + f)` in which `α + 1` is a unit and
/// `α^n = -f(α + 1)`, so `n·div(α) = div(f)`.
pub fn lemma44_presentation(f: &Polynomial, n: u32, cfg: &GbConfig) -> Result<Lemma44Presentation> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if f.is_zero() || f.is_constant() {
        return Err(Error::invalid("f must be a nonzero nonunit"));
    }
    let base = f.ring();
    let name = base.fresh_name(&["alpha", "a", "b"]);
    let mut names = base.vars().to_vec();
    names.push(name);
    let ring = Ring::with_names(base.p() as u64, names)?;
    let fa = f.remap(&ring, |m| {
        let mut e = m.exponents().to_vec();
        e.push(0);
        Ok(Monomial::from_exponents(&e))
    })?;
    let alpha = Polynomial::var(&ring, ring.nvars() - 1);
    let one = Polynomial::one(&ring);
    let alpha_n = alpha.pow(n as u64)?;
    let relation = alpha_n.checked_add(&fa.checked_mul(&alpha)?)?.checked_add(&fa)?;
    let unit_witness = alpha.checked_add(&one)?;

    // relation(-1) = (-1)^n, so relation = (α+1)·q + (-1)^n
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let rest = relation.checked_sub(&Polynomial::constant(&ring, sign))?;
    let q = rest
        .exact_div(&unit_witness)?
        .ok_or_else(|| Error::invalid("relation does not reduce as expected"))?;
    let inverse = q.scale(ring.field().from_i64(-sign));

    let rel_ideal = Ideal::principal(&relation);
    let power_identity = rel_ideal.contains(&alpha_n.checked_add(&fa.checked_mul(&unit_witness)?)?, cfg)?;
    let unit_verified = rel_ideal.contains(&unit_witness.checked_mul(&inverse)?.checked_sub(&one)?, cfg)?;
    Ok(Lemma44Presentation {
        ring,
        relation,
        unit_witness,
        inverse,
        power_identity,
        unit_verified,
        divisor_identity: power_identity && unit_verified,
    })
}
