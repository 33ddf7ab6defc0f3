//! Central charges and slopes of the tilt stability conditions.
//!
//! `α` enters only through `α²`, so every value here is rational. Each
//! pairing `H^{3-k}·Ch_k` contributes a factor `H³ = d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::{ChernVector, FanoContext};
use crate::error::{Error, Result};
use crate::rational::{qi, serde_q, Q};

/// A point `(α, β)` of the upper half plane, stored as `(α², β)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityParams {
    #[serde(with = "serde_q")]
    alpha_sq: Q,
    #[serde(with = "serde_q")]
    beta: Q,
}

impl StabilityParams {
    pub fn new(alpha_sq: Q, beta: Q) -> Result<Self> {
        if alpha_sq.is_positive() {
            Ok(Self { alpha_sq, beta })
        } else {
            Err(Error::BadBounds(format!("alpha^2 must be positive, got {alpha_sq}")))
        }
    }

    pub fn alpha_sq(&self) -> Q {
        self.alpha_sq
    }

    pub fn beta(&self) -> Q {
        self.beta
    }
}

/// Exact complex number `re + i·im`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    #[serde(with = "serde_q")]
    pub re: Q,
    #[serde(with = "serde_q")]
    pub im: Q,
}

impl ChargeValue {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    /// Multiplication by `i`.
    pub fn mul_i(self) -> Self {
        Self::new(-self.im, self.re)
    }
}

impl Add for ChargeValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Neg for ChargeValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// `-Re Z / Im Z`, or `+∞` when `Im Z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Q),
    PlusInfinity,
}

impl Slope {
    pub fn of(z: ChargeValue) -> Self {
        if z.im.is_zero() {
            Slope::PlusInfinity
        } else {
            Slope::Finite(-z.re / z.im)
        }
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            Slope::Finite(x) => Some(*x),
            Slope::PlusInfinity => None,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::PlusInfinity) => Ordering::Less,
            (Slope::PlusInfinity, Slope::Finite(_)) => Ordering::Greater,
            (Slope::PlusInfinity, Slope::PlusInfinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{x}"),
            Slope::PlusInfinity => write!(f, "+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Z_{α,β} = -H·Ch₂^β + (α²/2)H³·Ch₀^β + i·H²·Ch₁^β`.
pub fn charge_tilt(ctx: &FanoContext, params: &StabilityParams, x: &ChernVector) -> ChargeValue {
    let d = ctx.d();
    let t = x.twist(params.beta);
    ChargeValue::new(
        -d * t.c2 + params.alpha_sq / qi(2) * d * t.r,
        d * t.c1,
    )
}

pub fn slope_tilt(ctx: &FanoContext, params: &StabilityParams, x: &ChernVector) -> Slope {
    Slope::of(charge_tilt(ctx, params, x))
}

/// The rotated charge `Z⁰ = -i·Z_{α,β} = H²Ch₁^β + i(H·Ch₂^β - (α²/2)H³Ch₀)`.
pub fn charge_rotated(
    ctx: &FanoContext,
    params: &StabilityParams,
    x: &ChernVector,
) -> ChargeValue {
    let d = ctx.d();
    let t = x.twist(params.beta);
    ChargeValue::new(d * t.c1, d * t.c2 - params.alpha_sq / qi(2) * d * x.r)
}

pub fn slope_rotated(ctx: &FanoContext, params: &StabilityParams, x: &ChernVector) -> Slope {
    Slope::of(charge_rotated(ctx, params, x))
}

/// Mumford slope `Ch₁/Ch₀` (`+∞` for torsion).
pub fn slope_mumford(x: &ChernVector) -> Slope {
    Slope::of(ChargeValue::new(-x.c1, x.r))
}

/// `Δ = Ch₁² - 2·Ch₀·Ch₂` in coefficient units; unchanged by twisting.
pub fn discriminant(x: &ChernVector) -> Q {
    discriminant_of(x.r, x.c1, x.c2)
}

pub fn discriminant_of(r: Q, c1: Q, c2: Q) -> Q {
    c1 * c1 - qi(2) * r * c2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn params(a2: Q, b: Q) -> StabilityParams {
        StabilityParams::new(a2, b).unwrap()
    }

    #[test]
    fn w_is_purely_imaginary_at_minus_half() {
        for ctx in FanoContext::all() {
            for a2 in [q(1, 100), q(1, 4), qi(3)] {
                let p = params(a2, q(-1, 2));
                let z = charge_tilt(&ctx, &p, &ctx.w());
                assert_eq!(z, ChargeValue::new(qi(0), ctx.d()));
                assert_eq!(slope_tilt(&ctx, &p, &ctx.w()), Slope::Finite(qi(0)));
            }
        }
    }

    #[test]
    fn structure_sheaf_on_the_wall() {
        for ctx in FanoContext::all() {
            let p = params(q(1, 4), q(-1, 2));
            let z = charge_tilt(&ctx, &p, &ChernVector::unit());
            assert_eq!(z.re, qi(0));
            assert_eq!(slope_tilt(&ctx, &p, &ChernVector::unit()), Slope::Finite(qi(0)));
        }
    }

    #[test]
    fn zero_and_points() {
        let ctx = FanoContext::new(2).unwrap();
        let p = params(qi(1), qi(0));
        assert_eq!(charge_tilt(&ctx, &p, &ChernVector::zero()), ChargeValue::new(qi(0), qi(0)));
        assert_eq!(charge_rotated(&ctx, &p, &ChernVector::zero()), ChargeValue::new(qi(0), qi(0)));
        assert_eq!(slope_tilt(&ctx, &p, &ctx.point()), Slope::PlusInfinity);
    }

    #[test]
    fn rotated_charge_of_w() {
        for ctx in FanoContext::all() {
            let z = charge_rotated(&ctx, &params(q(1, 7), q(-1, 2)), &ctx.w());
            assert_eq!(z, ChargeValue::new(ctx.d(), qi(0)));
        }
    }

    #[test]
    fn rotated_charge_of_shifted_line_bundle() {
        // Im Z⁰(O(-1)[1]) = d(α²/2 - 1/8) changes sign on the wall α² = 1/4.
        for ctx in FanoContext::all() {
            let x = ChernVector::line_bundle(-1).shift(1);
            let z = charge_rotated(&ctx, &params(q(1, 100), q(-1, 2)), &x);
            assert_eq!(z, ChargeValue::new(ctx.d() / qi(2), -ctx.d() * q(3, 25)));
            let on_wall = charge_rotated(&ctx, &params(q(1, 4), q(-1, 2)), &x);
            assert_eq!(on_wall.im, qi(0));
            let above = charge_rotated(&ctx, &params(qi(1), q(-1, 2)), &x);
            assert!(above.im.is_positive());
        }
    }

    #[test]
    fn discriminant_examples() {
        for ctx in FanoContext::all() {
            assert_eq!(discriminant(&ctx.w()), qi(1));
        }
        assert_eq!(discriminant_of(qi(1), q(1, 2), q(1, 8)), qi(0));
        assert_eq!(discriminant(&ChernVector::unit()), qi(0));
    }

    #[test]
    fn nonpositive_alpha_rejected() {
        assert!(StabilityParams::new(qi(0), qi(0)).is_err());
        assert!(StabilityParams::new(q(-1, 2), qi(0)).is_err());
    }

    #[test]
    fn slope_ordering() {
        assert!(Slope::Finite(qi(100)) < Slope::PlusInfinity);
        assert!(Slope::Finite(q(-1, 2)) < Slope::Finite(qi(0)));
        assert_eq!(slope_mumford(&ChernVector::line_bundle(3)), Slope::Finite(qi(3)));
    }
}
