//! Multiplier ideals of monomial divisors, as an independent reference for τ.
//!
//! For a divisor `Σ c_i div(x_i)` with simple normal crossings the multiplier
//! ideal is the fractional monomial ideal `(x^⌊c⌋)`. For `t·div(x^v)` this is
//! Howald's description: `x^a ∈ J` iff `a_i + 1 > t v_i` for all i.

use crate::error::{Error, Result};
use crate::groebner::{GbConfig, Ideal};
use crate::polyring::{Monomial, Polynomial, RationalExponent, RingRef};
use crate::testideal::{tau_polynomial, PrincipalPair, TauOptions, TauResult};

/// Exponent vector and coefficient of the divisor `t·div(x^v)`.
#[derive(Debug, Clone)]
pub struct NewtonData {
    ring: RingRef,
    v: Vec<u32>,
    t: RationalExponent,
}

impl NewtonData {
    pub fn new(ring: &RingRef, v: Vec<u32>, t: RationalExponent) -> Result<Self> {
        if v.len() != ring.nvars() {
            return Err(Error::invalid("exponent vector length differs from the variable count"));
        }
        if v.iter().all(|&a| a == 0) && !t.is_zero() {
            return Err(Error::invalid("a unit monomial needs t = 0"));
        }
        Ok(NewtonData {
            ring: ring.clone(),
            v,
            t,
        })
    }

    /// Reads `v` from a monomial `g` (any nonzero coefficient).
    pub fn from_monomial(g: &Polynomial, t: RationalExponent) -> Result<Self> {
        if !g.is_monomial() {
            return Err(Error::Unsupported(format!("`{g}` is not a monomial")));
        }
        let v = g.terms()[0].0.exponents().to_vec();
        Self::new(g.ring(), v, t)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.v
    }

    pub fn t(&self) -> RationalExponent {
        self.t
    }

    pub fn nvars(&self) -> usize {
        self.v.len()
    }
}

/// `⌊num/den⌋` for a signed numerator.
pub fn floor_div(num: i128, den: u64) -> i128 {
    num.div_euclid(den as i128)
}

/// Exponents of the multiplier ideal of `Σ (num_i/den) div(x_i)`, possibly
/// negative.
pub fn multiplier_exponents(nums: &[i128], den: u64) -> Vec<i128> {
    nums.iter().map(|&c| floor_div(c, den)).collect()
}

/// Exponent vector `⌊t v⌋` of the single generator of J(g^t).
pub fn howald_exponents(data: &NewtonData) -> Vec<u32> {
    let (a, b) = (data.t.numer() as u128, data.t.denom() as u128);
    data.v.iter().map(|&vi| (a * vi as u128 / b) as u32).collect()
}

/// The monomial ideal `J(g^t) = (x^⌊t v⌋)`.
pub fn howald_multiplier(data: &NewtonData) -> Result<Ideal> {
    let m = Monomial::from_exponents(&howald_exponents(data));
    Ok(Ideal::principal(&Polynomial::term(&data.ring, m, 1)))
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub tau: TauResult,
    pub multiplier: Ideal,
    pub contained: bool,
    pub equal: bool,
}

/// τ(g^t) against J(g^t) for a monomial g on a polynomial ring.
pub fn compare_tau_multiplier(pair: &PrincipalPair, opts: &TauOptions) -> Result<CompareReport> {
    let data = NewtonData::from_monomial(pair.g(), pair.t())?;
    let tau = tau_polynomial(pair, opts)?;
    let multiplier = howald_multiplier(&data)?;
    let cfg: &GbConfig = &opts.gb;
    let contained = multiplier.contains_ideal(&tau.ideal, cfg)?;
    let equal = contained && tau.ideal.contains_ideal(&multiplier, cfg)?;
    Ok(CompareReport {
        tau,
        multiplier,
        contained,
        equal,
    })
}
