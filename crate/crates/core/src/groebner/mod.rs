//! Ideal engine: reduced Gröbner bases, membership, equality, sums and
//! intersections. Ideal identity is reduced-basis equality under grevlex.

mod buchberger;
mod order;

use std::fmt;
use std::sync::OnceLock;

pub use buchberger::{buchberger, extend_basis, normal_form_with};
pub use order::{MonomialOrder, OrderKind};

use crate::error::{Error, Result};
use crate::polyring::{parse_ideal_generators, same_ring, Monomial, Polynomial, Ring, RingRef};

/// Environment variable overriding the default S-pair budget.
pub const SPAIR_CAP_ENV: &str = "CARTIERLAB_SPAIR_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbConfig {
    /// Maximum number of S-pairs processed by one basis computation.
    pub spair_cap: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { spair_cap: 100_000 }
    }
}

impl GbConfig {
    pub fn with_cap(spair_cap: usize) -> Self {
        GbConfig { spair_cap }
    }

    /// Default config, with the cap taken from `CARTIERLAB_SPAIR_CAP` when set.
    pub fn from_env() -> Self {
        std::env::var(SPAIR_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self::with_cap)
            .unwrap_or_default()
    }
}

/// Finitely generated ideal of a polynomial ring, with a lazily computed
/// reduced grevlex Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(ring, g.ring()) {
                return Err(Error::RingMismatch("ideal generator from another ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_reduced_basis(ring, vec![Polynomial::one(ring)])
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::from_reduced_basis(ring, Vec::new())
    }

    /// Wraps a basis already known to be the reduced grevlex Gröbner basis.
    pub(crate) fn from_reduced_basis(ring: &RingRef, basis: Vec<Polynomial>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        Ideal {
            ring: ring.clone(),
            gens: basis,
            gb,
        }
    }

    /// Parses the printed form `(f1, ..., fk)`.
    pub fn parse(text: &str, ring: &RingRef) -> Result<Self> {
        Ideal::new(ring, parse_ideal_generators(text, ring)?)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn basis(&self, cfg: &GbConfig) -> Result<&[Polynomial]> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = buchberger(&self.ring, &self.gens, &MonomialOrder::grevlex(), cfg)?;
        let _ = self.gb.set(b);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn normal_form(&self, f: &Polynomial, cfg: &GbConfig) -> Result<Polynomial> {
        self.check(f.ring())?;
        Ok(normal_form_with(f, self.basis(cfg)?, &MonomialOrder::grevlex()))
    }

    pub fn contains(&self, f: &Polynomial, cfg: &GbConfig) -> Result<bool> {
        Ok(self.normal_form(f, cfg)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, cfg: &GbConfig) -> Result<bool> {
        self.check(other.ring())?;
        for g in other.generators() {
            if !self.contains(g, cfg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, cfg: &GbConfig) -> Result<bool> {
        self.check(other.ring())?;
        Ok(self.basis(cfg)? == other.basis(cfg)?)
    }

    pub fn is_unit(&self, cfg: &GbConfig) -> Result<bool> {
        let b = self.basis(cfg)?;
        Ok(b.len() == 1 && b[0].is_unit())
    }

    /// Ideal generated by the concatenated generator lists.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other.ring())?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (new)`, reusing this ideal's basis.
    pub fn extended(&self, new: &[Polynomial], cfg: &GbConfig) -> Result<Ideal> {
        Ok(self.try_extend(new, cfg)?.unwrap_or_else(|| self.clone()))
    }

    /// `self + (new)`, or `None` when every element of `new` already lies in
    /// the ideal.
    pub fn try_extend(&self, new: &[Polynomial], cfg: &GbConfig) -> Result<Option<Ideal>> {
        let order = MonomialOrder::grevlex();
        let basis = self.basis(cfg)?;
        let mut fresh = Vec::new();
        for f in new {
            self.check(f.ring())?;
            let r = normal_form_with(f, basis, &order);
            if !r.is_zero() {
                fresh.push(r);
            }
        }
        if fresh.is_empty() {
            return Ok(None);
        }
        let b = extend_basis(&self.ring, basis, &fresh, &order, cfg)?;
        Ok(Some(Ideal::from_reduced_basis(&self.ring, b)))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other.ring())?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Intersection by eliminating an auxiliary variable from `t*I + (1-t)*J`
    /// under lex with the auxiliary variable first.
    pub fn intersect(&self, other: &Ideal, cfg: &GbConfig) -> Result<Ideal> {
        self.check(other.ring())?;
        let tname = self.ring.fresh_name(&["t_", "t__"]);
        let mut names = vec![tname];
        names.extend(self.ring.vars().iter().cloned());
        let big = Ring::with_names(self.ring.p() as u64, names)?;
        let n = self.ring.nvars();
        let lift = |f: &Polynomial| {
            f.remap(&big, |m| {
                let mut e = vec![0u32];
                e.extend_from_slice(m.exponents());
                Ok(Monomial::from_exponents(&e))
            })
        };
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(lift(f)?.checked_mul(&t)?);
        }
        for g in &other.gens {
            gens.push(lift(g)?.checked_mul(&one_minus_t)?);
        }
        let gb = buchberger(&big, &gens, &MonomialOrder::lex(), cfg)?;
        let mut out = Vec::new();
        for g in gb {
            if g.degree_in(0) == 0 {
                out.push(g.remap(&self.ring, |m| Ok(Monomial::from_exponents(&m.exponents()[1..=n])))?);
            }
        }
        Ideal::new(&self.ring, out)
    }

    /// Printed form of the reduced basis: `(g1, g2, ...)`, `(0)` for the zero ideal.
    pub fn canonical_string(&self, cfg: &GbConfig) -> Result<String> {
        Ok(format_generators(self.basis(cfg)?))
    }

    /// Reduced-basis generators as strings.
    pub fn generator_strings(&self, cfg: &GbConfig) -> Result<Vec<String>> {
        Ok(self.basis(cfg)?.iter().map(|g| g.to_string()).collect())
    }

    fn check(&self, ring: &RingRef) -> Result<()> {
        if same_ring(&self.ring, ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch("ideal and operand live in different rings".into()))
        }
    }
}

pub fn format_generators(gens: &[Polynomial]) -> String {
    if gens.is_empty() {
        return "(0)".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", format_generators(&self.gens))
    }
}

/// Remainder of `f` against a reduced grevlex basis.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial]) -> Polynomial {
    normal_form_with(f, gb, &MonomialOrder::grevlex())
}

pub fn ideal_contains(ideal: &Ideal, f: &Polynomial, cfg: &GbConfig) -> Result<bool> {
    ideal.contains(f, cfg)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<bool> {
    a.equals(b, cfg)
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn setup(p: u64, vars: &[&str]) -> (RingRef, impl Fn(&str) -> Polynomial) {
        let r = Ring::new(p, vars).unwrap();
        let r2 = r.clone();
        (r, move |s: &str| parse_polynomial(s, &r2).unwrap())
    }

    fn gb(r: &RingRef, gens: &[Polynomial]) -> Vec<String> {
        buchberger(r, gens, &MonomialOrder::grevlex(), &GbConfig::default())
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn buchberger_examples() {
        let (r, p) = setup(5, &["x", "y"]);
        assert_eq!(gb(&r, &[p("x^2 - y"), p("x")]), vec!["x", "y"]);
        assert!(gb(&r, &[]).is_empty());
        // S(x^2-1, xy-1) = x - y; then y^2 - 1 (x - y reduces the rest)
        assert_eq!(gb(&r, &[p("x^2 - 1"), p("x*y - 1")]), vec!["y^2 + 4", "x + 4*y"]);
    }

    #[test]
    fn normal_form_examples() {
        let (_, p) = setup(5, &["x", "y"]);
        assert!(normal_form(&p("x^2"), &[p("x")]).is_zero());
        assert_eq!(normal_form(&p("y"), &[p("x")]), p("y"));
        assert_eq!(normal_form(&p("x^2 + x*y"), &[p("x - y")]), p("2*y^2"));
    }

    #[test]
    fn membership_and_equality_examples() {
        let (r, p) = setup(5, &["x", "y"]);
        let cfg = GbConfig::default();
        let m = Ideal::new(&r, vec![p("x"), p("y")]).unwrap();
        assert!(m.contains(&p("x + y"), &cfg).unwrap());
        let x2 = Ideal::principal(&p("x^2"));
        assert!(!x2.contains(&p("x"), &cfg).unwrap());
        let i = Ideal::new(&r, vec![p("x*y - 1"), p("x^2 - 1")]).unwrap();
        assert!(i.contains(&p("x - y"), &cfg).unwrap());

        let m2 = Ideal::new(&r, vec![p("y"), p("x + y")]).unwrap();
        assert!(m.equals(&m2, &cfg).unwrap());
        assert!(!Ideal::principal(&p("x")).equals(&x2, &cfg).unwrap());
        let j = Ideal::new(&r, vec![p("x - y"), p("y^2 - 1")]).unwrap();
        assert!(j.equals(&i, &cfg).unwrap());
    }

    #[test]
    fn sum_examples() {
        let (r, p) = setup(5, &["x", "y"]);
        let cfg = GbConfig::default();
        let s = Ideal::principal(&p("x")).sum(&Ideal::principal(&p("y"))).unwrap();
        assert_eq!(s.canonical_string(&cfg).unwrap(), "(x, y)");
        let i = Ideal::principal(&p("x + y^2"));
        assert!(i.sum(&Ideal::zero(&r)).unwrap().equals(&i, &cfg).unwrap());
        let s = Ideal::principal(&p("x^2")).sum(&Ideal::principal(&p("x^3"))).unwrap();
        assert_eq!(s.canonical_string(&cfg).unwrap(), "(x^2)");
    }

    #[test]
    fn spair_cap_is_a_hard_failure() {
        let (r, p) = setup(7, &["x", "y", "z"]);
        let gens = vec![p("x^2*y + z + 1"), p("x*y^2 + x + 2"), p("x*y*z + y + 3")];
        let err = buchberger(&r, &gens, &MonomialOrder::grevlex(), &GbConfig::with_cap(2));
        assert_eq!(err, Err(Error::ResourceCap { cap: 2 }));
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let (_, p) = setup(5, &["x", "y"]);
        let cfg = GbConfig::default();
        let a = Ideal::principal(&p("x*y"));
        let b = Ideal::principal(&p("x^2"));
        let i = a.intersect(&b, &cfg).unwrap();
        assert_eq!(i.canonical_string(&cfg).unwrap(), "(x^2*y)");
        let c = Ideal::principal(&p("x + 1"));
        let d = Ideal::principal(&p("y"));
        let i = c.intersect(&d, &cfg).unwrap();
        assert_eq!(i.canonical_string(&cfg).unwrap(), "(x*y + y)");
    }

    #[test]
    fn lex_basis_eliminates() {
        let (r, p) = setup(7, &["x", "y"]);
        let b = buchberger(&r, &[p("x - y^2"), p("x*y - 1")], &MonomialOrder::lex(), &GbConfig::default())
            .unwrap();
        // last element lies in F_7[y] alone
        assert_eq!(b.last().unwrap().degree_in(0), 0);
        assert_eq!(b.last().unwrap().to_string(), "y^3 + 6");
    }
}
