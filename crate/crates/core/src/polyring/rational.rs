use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::field::gcd;
use crate::error::{Error, Result};

/// Nonnegative rational number, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    num: u64,
    den: u64,
}

impl RationalExponent {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        let g = gcd(num, den).max(1);
        Ok(RationalExponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Self {
        RationalExponent { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = (self.num as u128 * other.den as u128) + (other.num as u128 * self.den as u128);
        let den = self.den as u128 * other.den as u128;
        from_u128(num, den)
    }

    pub fn checked_mul_int(&self, k: u64) -> Result<Self> {
        from_u128(self.num as u128 * k as u128, self.den as u128)
    }
}

fn from_u128(num: u128, den: u128) -> Result<RationalExponent> {
    let g = {
        let (mut a, mut b) = (num, den);
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a.max(1)
    };
    let (n, d) = (num / g, den / g);
    Ok(RationalExponent {
        num: u64::try_from(n).map_err(|_| Error::Overflow)?,
        den: u64::try_from(d).map_err(|_| Error::Overflow)?,
    })
}

/// `ceil(t * m)`, computed exactly in integers.
pub fn ceil_scale(t: &RationalExponent, m: u64) -> Result<u64> {
    let prod = t.num as u128 * m as u128;
    let q = prod.div_ceil(t.den as u128);
    u64::try_from(q).map_err(|_| Error::Overflow)
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `a`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("`{s}` is not a nonnegative rational"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = n.parse::<u64>().map_err(|_| bad())?;
        let den = d.parse::<u64>().map_err(|_| bad())?;
        RationalExponent::new(num, den)
    }
}

impl serde::Serialize for RationalExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RationalExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalExponent {
        s.parse().unwrap()
    }

    #[test]
    fn ceil_scale_examples() {
        assert_eq!(ceil_scale(&q("5/6"), 6).unwrap(), 5);
        assert_eq!(ceil_scale(&q("1/2"), 2).unwrap(), 1);
        assert_eq!(ceil_scale(&q("5/6"), 48).unwrap(), 40);
        assert_eq!(ceil_scale(&q("5/6"), 7).unwrap(), 6);
        assert_eq!(ceil_scale(&q("0"), 1000).unwrap(), 0);
        assert_eq!(ceil_scale(&RationalExponent::integer(u64::MAX), 2), Err(Error::Overflow));
    }

    #[test]
    fn lowest_terms_and_parsing() {
        assert_eq!(q("10/12"), q("5/6"));
        assert_eq!(q("4").to_string(), "4/1");
        assert!("1/0".parse::<RationalExponent>().is_err());
        assert!("-1/2".parse::<RationalExponent>().is_err());
        assert!("x".parse::<RationalExponent>().is_err());
        assert!(q("1/3") < q("1/2"));
        assert_eq!(q("1/2").checked_add(&q("1/3")).unwrap(), q("5/6"));
    }
}
