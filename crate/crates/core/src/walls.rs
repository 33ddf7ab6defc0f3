//! Numerical walls in the `(β, α)` half plane and the search for classes that
//! could destabilize a target along a vertical line `β = β₀`.
//!
//! For classes with truncated characters `(r_i, c_i, e_i)`, slope equality
//! reads `C + βB + (A/2)(β² + α²) = 0` with
//! `A = r₁c₂ - r₂c₁`, `B = e₁r₂ - e₂r₁`, `C = e₂c₁ - e₁c₂`,
//! which is a semicircle centred on the β-axis when `A ≠ 0` and a vertical
//! line when `A = 0, B ≠ 0`.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::chern::{ChernVector, FanoContext};
use crate::error::{Error, Result};
use crate::rational::{ceil_q, floor_q, on_lattice, q, qi, serde_q, Q};
use crate::tilt::discriminant_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallLocus {
    Semicircle {
        #[serde(with = "serde_q")]
        center_beta: Q,
        #[serde(with = "serde_q")]
        radius_sq: Q,
    },
    Vertical {
        #[serde(with = "serde_q")]
        beta0: Q,
    },
}

impl WallLocus {
    /// The value of `α²` where the wall meets the line `β = beta`, if it does.
    pub fn alpha_sq_at(&self, beta: Q) -> Option<Q> {
        match *self {
            WallLocus::Semicircle { center_beta, radius_sq } => {
                let off = beta - center_beta;
                let a2 = radius_sq - off * off;
                a2.is_positive().then_some(a2)
            }
            WallLocus::Vertical { .. } => None,
        }
    }

    pub fn crosses(&self, beta: Q) -> bool {
        self.alpha_sq_at(beta).is_some()
    }
}

/// The numerical wall where `target` and `other` have equal tilt slope.
///
/// Returns `None` when the slope equation is empty or holds identically, in
/// particular for classes with proportional `(Ch₀, Ch₁, Ch₂)`.
pub fn numerical_wall(target: &ChernVector, other: &ChernVector) -> Option<WallLocus> {
    let [r1, c1, e1] = target.truncated();
    let [r2, c2, e2] = other.truncated();
    let a = r1 * c2 - r2 * c1;
    let b = e1 * r2 - e2 * r1;
    let c = e2 * c1 - e1 * c2;
    if !a.is_zero() {
        let center = -b / a;
        let radius_sq = center * center - qi(2) * c / a;
        radius_sq.is_positive().then_some(WallLocus::Semicircle {
            center_beta: center,
            radius_sq,
        })
    } else if !b.is_zero() {
        Some(WallLocus::Vertical { beta0: -c / b })
    } else {
        None
    }
}

/// Denominators of the lattices holding `Ch₁^{β₀}` and `Ch₂^{β₀}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorLattice {
    pub ch1: i128,
    pub ch2: i128,
}

impl DenominatorLattice {
    pub fn new(ch1: i128, ch2: i128) -> Result<Self> {
        if ch1 < 1 || ch2 < 1 {
            return Err(Error::BadBounds(format!("denominators must be positive, got ({ch1}, {ch2})")));
        }
        Ok(Self { ch1, ch2 })
    }

    /// `(2, 8)`, the lattice at `β = -1/2` used in the unique-wall argument.
    pub fn half_eighth() -> Self {
        Self { ch1: 2, ch2: 8 }
    }

    /// `(2, lcm(8, d))`: at `β = -1/2`, `Ch₂^β = Ch₂ + Ch₁/2 + Ch₀/8` with
    /// `Ch₂ ∈ Ch₁²/2 + (1/d)Z`.
    pub fn default_for(ctx: &FanoContext) -> Self {
        Self {
            ch1: 2,
            ch2: 8i128.lcm(&(ctx.degree() as i128)),
        }
    }
}

/// Which numerical filters the search applies beyond the wall and `Δ` bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRules {
    /// `x` and `z` nonzero with equal signs. `None` turns it on exactly when
    /// the target has rank zero.
    pub same_sign: Option<bool>,
    /// Require `x = Ch₀ ≥ 0`: a subobject of a sheaf in the tilted heart is a
    /// sheaf.
    pub sheaf_subobject: bool,
    /// Keep only candidates whose untwisted character satisfies
    /// `Ch₀, Ch₁ ∈ Z`, `Ch₂ ∈ Ch₁²/2 + (1/d)Z`.
    pub integral_chern: bool,
}

impl Default for SearchRules {
    fn default() -> Self {
        Self {
            same_sign: None,
            sheaf_subobject: true,
            integral_chern: false,
        }
    }
}

impl SearchRules {
    pub fn same_sign_for(&self, target: &ChernVector) -> bool {
        self.same_sign.unwrap_or_else(|| target.r.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    #[serde(with = "serde_q")]
    pub beta0: Q,
    pub lattice: DenominatorLattice,
    pub x_bound: i128,
    /// Bound on `|z|` for the `x = 0` slice, where `Δ` does not bound `z`.
    pub z_bound: i128,
    pub rules: SearchRules,
}

impl SearchConfig {
    pub fn new(beta0: Q, lattice: DenominatorLattice, x_bound: i128) -> Self {
        Self {
            beta0,
            lattice,
            x_bound,
            z_bound: x_bound.max(1),
            rules: SearchRules::default(),
        }
    }

    pub fn with_rules(mut self, rules: SearchRules) -> Self {
        self.rules = rules;
        self
    }
}

/// A class `(x, y, z) = Ch^{β₀}_{≤2}(A)` passing every numerical test for a
/// destabilizing subobject of the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DestabilizerCandidate {
    pub x: i128,
    #[serde(with = "serde_q")]
    pub y: Q,
    #[serde(with = "serde_q")]
    pub z: Q,
    pub wall: WallLocus,
    /// Where the wall meets `β = β₀`.
    #[serde(with = "serde_q")]
    pub alpha_sq: Q,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
}

impl DestabilizerCandidate {
    /// The untwisted truncated character, with `Ch₃ = 0`.
    pub fn untwisted(&self, beta0: Q) -> ChernVector {
        let [r, c1, c2] = ChernVector::new(qi(self.x), self.y, self.z, qi(0)).twist(-beta0).truncated();
        ChernVector::new(r, c1, c2, qi(0))
    }
}

/// Lattice points `k/den` in the closed interval `[lo, hi]`.
fn lattice_points(lo: Q, hi: Q, den: i128) -> impl Iterator<Item = Q> {
    let d = qi(den);
    let first = ceil_q(&(lo * d));
    let last = floor_q(&(hi * d));
    (first..=last).map(move |k| q(k, den))
}

fn chern_integral(ctx: &FanoContext, untwisted: &ChernVector) -> bool {
    let d = ctx.degree() as i128;
    untwisted.r.is_integer()
        && untwisted.c1.is_integer()
        && on_lattice(&(untwisted.c2 - untwisted.c1 * untwisted.c1 / qi(2)), d)
}

struct Target {
    r: Q,
    c: Q,
    e: Q,
    delta: Q,
}

impl Target {
    fn new(target: &ChernVector, beta0: Q) -> Self {
        let [r, c, e] = target.twist(beta0).truncated();
        Self { r, c, e, delta: discriminant_of(r, c, e) }
    }

    /// `α²` where the candidate wall meets `β₀`, in twisted coordinates.
    fn wall_alpha_sq(&self, x: Q, y: Q, z: Q) -> Option<Q> {
        let a = self.r * y - x * self.c;
        if a.is_zero() {
            return None;
        }
        let s = qi(-2) * (z * self.c - self.e * y) / a;
        s.is_positive().then_some(s)
    }
}

/// All classes that numerically destabilize `target` along `β = β₀`.
///
/// Candidates satisfy `0 < y < Ch₁^{β₀}(target)`, lie on the configured
/// lattice, have `|x| ≤ x_bound`, define a wall crossing `β₀` at some
/// `α² > 0`, and have `0 ≤ Δ ≤ Δ(target)`. Output is sorted by `(x, y, z)`.
pub fn destabilizer_search(
    ctx: &FanoContext,
    target: &ChernVector,
    config: &SearchConfig,
) -> Result<Vec<DestabilizerCandidate>> {
    if config.x_bound < 0 || config.z_bound < 0 {
        return Err(Error::BadBounds(format!(
            "bounds must be non-negative, got x_bound={} z_bound={}",
            config.x_bound, config.z_bound
        )));
    }
    let t = Target::new(target, config.beta0);
    let same_sign = config.rules.same_sign_for(target);
    let lat = config.lattice;
    let ys: Vec<Q> = lattice_points(qi(0), t.c, lat.ch1)
        .filter(|y| y.is_positive() && *y < t.c)
        .collect();
    let x_lo = if config.rules.sheaf_subobject { 0 } else { -config.x_bound };

    let slices: Vec<Vec<DestabilizerCandidate>> = (x_lo..=config.x_bound)
        .into_par_iter()
        .map(|x| {
            let xq = qi(x);
            let mut found = Vec::new();
            for &y in &ys {
                let (zlo, zhi) = if x == 0 {
                    (qi(-config.z_bound), qi(config.z_bound))
                } else {
                    // 0 ≤ y² - 2xz ≤ Δ(target)
                    let a = (y * y - t.delta) / (qi(2) * xq);
                    let b = y * y / (qi(2) * xq);
                    (a.min(b), a.max(b))
                };
                for z in lattice_points(zlo, zhi, lat.ch2) {
                    if same_sign && (x == 0 || z.is_zero() || (x > 0) != z.is_positive()) {
                        continue;
                    }
                    let delta = discriminant_of(xq, y, z);
                    if delta.is_negative() || delta > t.delta {
                        continue;
                    }
                    let Some(alpha_sq) = t.wall_alpha_sq(xq, y, z) else {
                        continue;
                    };
                    let untwisted = ChernVector::new(xq, y, z, qi(0)).twist(-config.beta0);
                    if config.rules.integral_chern && !chern_integral(ctx, &untwisted) {
                        continue;
                    }
                    let Some(wall) = numerical_wall(target, &untwisted) else {
                        continue;
                    };
                    found.push(DestabilizerCandidate {
                        x,
                        y,
                        z,
                        wall,
                        alpha_sq,
                        discriminant: delta,
                    });
                }
            }
            found
        })
        .collect();

    let mut out: Vec<_> = slices.into_iter().flatten().collect();
    out.sort_by_key(|a| (a.x, a.y, a.z));
    Ok(out)
}

/// A wall crossing the line `β = β₀`, with the candidates producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCrossing {
    pub locus: WallLocus,
    #[serde(with = "serde_q")]
    pub alpha_sq: Q,
    pub candidates: Vec<DestabilizerCandidate>,
}

/// `Ch(I_p) + Ch(O_Y(-1)[1]) = w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub sub: ChernVector,
    pub quotient: ChernVector,
    pub sum: ChernVector,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    pub degree: i64,
    pub target: ChernVector,
    pub config: SearchConfig,
    /// Whether the same-sign rule was in force for this target.
    pub same_sign_applied: bool,
    /// Sorted by decreasing `α`, as met walking down from large `α`.
    pub walls: Vec<WallCrossing>,
    pub chambers_on_line: usize,
    pub decomposition: Option<DecompositionCheck>,
}

/// Walls met along `β = β₀` together with the destabilizing classes.
pub fn chamber_report(
    ctx: &FanoContext,
    target: &ChernVector,
    config: &SearchConfig,
) -> Result<ChamberReport> {
    let candidates = destabilizer_search(ctx, target, config)?;
    let mut walls: Vec<WallCrossing> = Vec::new();
    for c in candidates {
        match walls.iter_mut().find(|w| w.alpha_sq == c.alpha_sq) {
            Some(w) => w.candidates.push(c),
            None => walls.push(WallCrossing {
                locus: c.wall,
                alpha_sq: c.alpha_sq,
                candidates: vec![c],
            }),
        }
    }
    walls.sort_by_key(|w| std::cmp::Reverse(w.alpha_sq));

    let decomposition = (*target == ctx.w()).then(|| {
        let sub = catalog::ideal_of_point(ctx);
        let quotient = ChernVector::line_bundle(-1).shift(1);
        let sum = sub + quotient;
        DecompositionCheck { sub, quotient, sum, holds: sum == ctx.w() }
    });

    Ok(ChamberReport {
        degree: ctx.degree(),
        target: *target,
        config: *config,
        same_sign_applied: config.rules.same_sign_for(target),
        chambers_on_line: walls.len() + 1,
        walls,
        decomposition,
    })
}
