//! Test ideals of pairs in characteristic p.
//!
//! Built on exact arithmetic over F_p and a Gröbner-basis ideal engine: Frobenius
//! trace maps, stabilizing test-ideal chains, F-pure threshold bounds, Kummer
//! covers with field trace, and monomial multiplier-ideal references.

pub mod cli;
pub mod covers;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod multoracle;
pub mod polyring;
pub mod testideal;

pub use error::{Error, Result};
