//! Chern characters on an index-two Fano threefold of Picard rank one.
//!
//! Classes are stored as coefficients of `1, H, H², H³` in `H*(Y, Q)`. The
//! only intersection data needed is `H³ = d` and `H·c₂(Y) = 12`; the latter
//! follows from `χ(O_Y) = 1` and `c₁(Y) = 2H`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{on_lattice, q, qi, serde_q, Q};

/// A Fano threefold `Y_d` of index two, identified by its degree `d = H³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanoContext {
    degree: i64,
}

impl FanoContext {
    pub const H_C2: i64 = 12;

    pub fn new(degree: i64) -> Result<Self> {
        if (1..=5).contains(&degree) {
            Ok(Self { degree })
        } else {
            Err(Error::DegreeOutOfRange(degree))
        }
    }

    pub fn all() -> impl Iterator<Item = FanoContext> {
        (1..=5).map(|d| FanoContext { degree: d })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn d(&self) -> Q {
        qi(self.degree as i128)
    }

    /// `H·c₂(Y)`.
    pub fn h_c2(&self) -> i64 {
        Self::H_C2
    }

    /// Integrals of `H^k · td(Y)` for `k = 0..=3`: the weights that turn a
    /// Chern vector into an Euler characteristic.
    pub fn todd_weights(&self) -> [Q; 4] {
        let d = self.d();
        [
            qi(1),
            (qi(4) * d + qi(Self::H_C2 as i128)) / qi(12),
            d,
            d,
        ]
    }

    /// Denominators of the lattice containing Chern characters of actual
    /// objects: `Ch₁ ∈ Z`, `Ch₂ ∈ (1/lcm(2,d))Z`, `Ch₃ ∈ (1/lcm(6,d))Z`.
    pub fn integrality(&self) -> IntegralityLattice {
        let d = self.degree as i128;
        IntegralityLattice {
            ch1: 1,
            ch2: 2.lcm(&d),
            ch3: 6.lcm(&d),
        }
    }

    /// `v = 1 - H²/d`.
    pub fn v(&self) -> ChernVector {
        ChernVector::new(qi(1), qi(0), -self.d().recip(), qi(0))
    }

    /// `w = H - H²/2 + (1/6 - 1/d)H³`.
    pub fn w(&self) -> ChernVector {
        ChernVector::new(qi(0), qi(1), q(-1, 2), q(1, 6) - self.d().recip())
    }

    /// Class of a closed point, `[pt] = H³/d`.
    pub fn point(&self) -> ChernVector {
        ChernVector::new(qi(0), qi(0), qi(0), self.d().recip())
    }
}

/// Denominator bounds for Chern characters of genuine objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityLattice {
    pub ch1: i128,
    pub ch2: i128,
    pub ch3: i128,
}

impl IntegralityLattice {
    pub fn contains(&self, x: &ChernVector) -> bool {
        x.r.is_integer()
            && on_lattice(&x.c1, self.ch1)
            && on_lattice(&x.c2, self.ch2)
            && on_lattice(&x.c3, self.ch3)
    }
}

/// Exact Chern character `r + c1·H + c2·H² + c3·H³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernVector {
    #[serde(with = "serde_q")]
    pub r: Q,
    #[serde(with = "serde_q")]
    pub c1: Q,
    #[serde(with = "serde_q")]
    pub c2: Q,
    #[serde(with = "serde_q")]
    pub c3: Q,
}

impl ChernVector {
    pub const fn new(r: Q, c1: Q, c2: Q, c3: Q) -> Self {
        Self { r, c1, c2, c3 }
    }

    pub fn zero() -> Self {
        Self::new(qi(0), qi(0), qi(0), qi(0))
    }

    pub fn unit() -> Self {
        Self::new(qi(1), qi(0), qi(0), qi(0))
    }

    pub fn from_ints(r: i128, c1: i128, c2: i128, c3: i128) -> Self {
        Self::new(qi(r), qi(c1), qi(c2), qi(c3))
    }

    pub fn coeffs(&self) -> [Q; 4] {
        [self.r, self.c1, self.c2, self.c3]
    }

    pub fn from_coeffs(c: [Q; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// `exp(tH)` truncated above `H³`.
    pub fn exp_h(t: Q) -> Self {
        Self::new(qi(1), t, t * t / qi(2), t * t * t / qi(6))
    }

    /// `Ch(O_Y(n))`.
    pub fn line_bundle(n: i128) -> Self {
        Self::exp_h(qi(n))
    }

    pub fn scale(&self, k: Q) -> Self {
        Self::new(self.r * k, self.c1 * k, self.c2 * k, self.c3 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }

    /// Product in `Q[H]/(H⁴)`.
    pub fn ring_multiply(&self, other: &Self) -> Self {
        let a = self.coeffs();
        let b = other.coeffs();
        let mut out = [qi(0); 4];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(4 - i) {
                out[i + j] += x * y;
            }
        }
        Self::from_coeffs(out)
    }

    /// `Ch^β = Ch · exp(-βH)`.
    pub fn twist(&self, beta: Q) -> Self {
        self.ring_multiply(&Self::exp_h(-beta))
    }

    /// Chern character of the derived dual.
    pub fn dual(&self) -> Self {
        Self::new(self.r, -self.c1, self.c2, -self.c3)
    }

    /// Chern character of the shift `E[n]`.
    pub fn shift(&self, n: i32) -> Self {
        if n % 2 == 0 {
            *self
        } else {
            -*self
        }
    }

    /// `Ch₀, Ch₁, Ch₂`, the part seen by tilt stability.
    pub fn truncated(&self) -> [Q; 3] {
        [self.r, self.c1, self.c2]
    }
}

impl Add for ChernVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r + o.r, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl Sub for ChernVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ChernVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(qi(-1))
    }
}

impl Mul for ChernVector {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.ring_multiply(&o)
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.c1, self.c2, self.c3)
    }
}

/// `χ(E) = ∫ Ch(E)·td(Y) = r + c1(d+3)/3 + (c2 + c3)d`.
pub fn hrr_chi(ctx: &FanoContext, x: &ChernVector) -> Q {
    x.coeffs()
        .iter()
        .zip(ctx.todd_weights())
        .map(|(c, w)| c * w)
        .sum()
}

/// Euler pairing `χ(E, F) = χ(E^∨ ⊗ F)`.
pub fn chi_pair(ctx: &FanoContext, x: &ChernVector, y: &ChernVector) -> Q {
    hrr_chi(ctx, &x.dual().ring_multiply(y))
}

/// `Ch(K_Y) = exp(-2H)`.
pub fn canonical_class() -> ChernVector {
    ChernVector::line_bundle(-2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(r: Q, c1: Q, c2: Q, c3: Q) -> ChernVector {
        ChernVector::new(r, c1, c2, c3)
    }

    #[test]
    fn multiply_examples() {
        let x = cv(qi(0), qi(1), q(-1, 2), q(1, 6));
        assert_eq!(ChernVector::unit() * x, x);
        let prod = ChernVector::line_bundle(-1) * ChernVector::line_bundle(1);
        assert_eq!(prod, ChernVector::unit());
        for d in 1..=5 {
            let v = cv(qi(1), qi(0), -q(1, d), qi(0));
            assert_eq!(v * v, cv(qi(1), qi(0), -q(2, d), qi(0)));
        }
    }

    #[test]
    fn twist_examples() {
        for ctx in FanoContext::all() {
            let t = ctx.w().twist(q(-1, 2));
            assert_eq!(t.truncated(), [qi(0), qi(1), qi(0)]);
        }
        let o = ChernVector::unit().twist(q(-1, 2));
        assert_eq!(o, cv(qi(1), q(1, 2), q(1, 8), q(1, 48)));
        let x = cv(q(3, 7), qi(-2), q(5, 3), q(1, 11));
        assert_eq!(x.twist(qi(0)), x);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(ChernVector::unit().dual(), ChernVector::unit());
        for ctx in FanoContext::all() {
            let inv = ctx.d().recip();
            assert_eq!(
                ctx.w().dual(),
                cv(qi(0), qi(-1), q(-1, 2), inv - q(1, 6))
            );
            assert_eq!(ctx.w().dual().dual(), ctx.w());
        }
    }

    #[test]
    fn chi_of_line_bundles() {
        for ctx in FanoContext::all() {
            assert_eq!(hrr_chi(&ctx, &ChernVector::unit()), qi(1));
        }
        let o1 = ChernVector::line_bundle(1);
        assert_eq!(hrr_chi(&FanoContext::new(1).unwrap(), &o1), qi(3));
        assert_eq!(hrr_chi(&FanoContext::new(2).unwrap(), &o1), qi(4));
        // h⁰(O(1)) = d + 2 in every degree, higher cohomology vanishing.
        for ctx in FanoContext::all() {
            assert_eq!(hrr_chi(&ctx, &o1), ctx.d() + qi(2));
            // O(-1) and K_Y = O(-2) are acyclic / have χ = -χ(O) = -1.
            assert_eq!(hrr_chi(&ctx, &ChernVector::line_bundle(-1)), qi(0));
            assert_eq!(hrr_chi(&ctx, &canonical_class()), qi(-1));
        }
    }

    #[test]
    fn h_c2_matches_cubic_euler_sequence() {
        // c(T_P4) = (1+H)^5 restricted, divided by the normal bundle 1 + 3H.
        // Work with integer coefficients of H^k.
        let binom = [1i128, 5, 10, 10];
        let c: Vec<i128> = (0..4)
            .map(|k| (0..=k).map(|j| binom[j] * (-3i128).pow((k - j) as u32)).sum())
            .collect();
        assert_eq!(c[1], 2);
        assert_eq!(c[2], 4);
        // H·c₂ = 4 H³ = 4·3.
        assert_eq!(c[2] * 3, FanoContext::H_C2 as i128);
    }

    #[test]
    fn euler_matrix_all_degrees() {
        for ctx in FanoContext::all() {
            let (v, w) = (ctx.v(), ctx.w());
            let d = ctx.d();
            assert_eq!(chi_pair(&ctx, &v, &v), qi(-1));
            assert_eq!(chi_pair(&ctx, &v, &w), qi(-1));
            assert_eq!(chi_pair(&ctx, &w, &v), qi(1) - d);
            assert_eq!(chi_pair(&ctx, &w, &w), -d);
        }
    }

    #[test]
    fn bad_degree() {
        assert_eq!(FanoContext::new(0), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(FanoContext::new(7), Err(Error::DegreeOutOfRange(7)));
    }

    #[test]
    fn integrality_of_v_and_w() {
        for ctx in FanoContext::all() {
            let lat = ctx.integrality();
            assert!(lat.contains(&ctx.v()));
            assert!(lat.contains(&ctx.w()));
            assert!(lat.contains(&ctx.point()));
            assert!(!lat.contains(&ctx.point().scale(q(1, 2 * ctx.degree() as i128 * 6))));
        }
    }
}
