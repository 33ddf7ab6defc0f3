//! Exact rationals used throughout the crate.
//!
//! Every quantity is a `Ratio<i128>`; nothing in the library rounds. The
//! canonical text form is `p/q` in lowest terms, or `p` when `q = 1`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number.
pub type Q = Ratio<i128>;

/// Shorthand constructor: `q(1, 2)` is one half.
pub fn q(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

/// Integer as a rational.
pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i128>().map(qi).map_err(|_| bad()),
    }
}

/// Canonical string form.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// True when `x` is an integer multiple of `1/den`.
pub fn on_lattice(x: &Q, den: i128) -> bool {
    (x * qi(den)).is_integer()
}

/// Floor of a rational (towards negative infinity).
pub fn floor_q(x: &Q) -> i128 {
    x.floor().to_integer()
}

/// Ceiling of a rational.
pub fn ceil_q(x: &Q) -> i128 {
    x.ceil().to_integer()
}

pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Lossy conversion, only for drawing.
pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Newtype wrapper giving a rational string serialization, for use inside
/// collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_q::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_q::deserialize(d).map(Rat)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
