//! Roots and lines on del Pezzo surfaces, in the lattice `I^{1,9-d}` with
//! basis `e₀, e₁, …, e_{9-d}` and form `diag(1, -1, …, -1)`.
//!
//! Both enumerations solve `Σcᵢ = s`, `Σcᵢ² = t` for fixed `e₀`-coefficient
//! `a`; Cauchy–Schwarz `s² ≤ n·t` bounds `a`, and the squared-sum budget
//! bounds each `cᵢ`, so the scan is complete.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

/// `e0·e₀ + Σ e[i]·e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PicVector {
    pub e0: i64,
    pub e: Vec<i64>,
}

impl PicVector {
    pub fn new(e0: i64, e: Vec<i64>) -> Self {
        Self { e0, e }
    }

    /// The exceptional class `e_i`, `1 ≤ i ≤ n`.
    pub fn exceptional(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::new(0, e)
    }

    pub fn hyperplane(n: usize) -> Self {
        Self::new(1, vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.e.len() + 1
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.e0 * k, self.e.iter().map(|c| c * k).collect())
    }

    fn combine(&self, o: &Self, k: i64) -> Self {
        assert_eq!(self.e.len(), o.e.len(), "Picard ranks differ");
        Self::new(
            self.e0 + k * o.e0,
            self.e.iter().zip(&o.e).map(|(a, b)| a + k * b).collect(),
        )
    }

    pub fn coords(&self) -> Vec<i64> {
        std::iter::once(self.e0).chain(self.e.iter().copied()).collect()
    }
}

impl fmt::Display for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.e0)?;
        for (i, c) in self.e.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, c)?;
        }
        write!(f, ")")
    }
}

impl Serialize for PicVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

/// A del Pezzo surface of degree `K² = dp_degree`, blown up at `9 - dp_degree` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPContext {
    dp_degree: i64,
    canonical: PicVector,
}

impl DPContext {
    pub fn new(dp_degree: i64) -> Result<Self> {
        if !(1..=7).contains(&dp_degree) {
            return Err(Error::DpDegreeOutOfRange(dp_degree));
        }
        let n = (9 - dp_degree) as usize;
        Ok(Self {
            dp_degree,
            canonical: PicVector::new(-3, vec![1; n]),
        })
    }

    pub fn dp_degree(&self) -> i64 {
        self.dp_degree
    }

    /// Number of blown-up points.
    pub fn n(&self) -> usize {
        (9 - self.dp_degree) as usize
    }

    /// `K = -3e₀ + Σeᵢ`.
    pub fn canonical(&self) -> &PicVector {
        &self.canonical
    }

    /// `-K`, the restriction of the hyperplane class of the threefold.
    pub fn anticanonical(&self) -> PicVector {
        self.canonical.scale(-1)
    }

    fn check(&self, x: &PicVector) -> Result<()> {
        if x.rank() != self.n() + 1 {
            return Err(Error::RankMismatch(x.rank(), self.n() + 1));
        }
        Ok(())
    }

    pub fn intersect(&self, x: &PicVector, y: &PicVector) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        Ok(dot(x, y))
    }

    pub fn is_root(&self, x: &PicVector) -> bool {
        x.rank() == self.n() + 1 && dot(x, x) == -2 && dot(x, &self.canonical) == 0
    }

    pub fn is_line(&self, x: &PicVector) -> bool {
        x.rank() == self.n() + 1 && dot(x, x) == -1 && dot(x, &self.canonical) == -1
    }
}

fn dot(x: &PicVector, y: &PicVector) -> i64 {
    x.e0 * y.e0 - x.e.iter().zip(&y.e).map(|(a, b)| a * b).sum::<i64>()
}

/// Shape of a class to enumerate: `D² = square`, `D·K = canonical_degree`.
#[derive(Clone, Copy, Debug)]
struct Shape {
    square: i64,
    canonical_degree: i64,
}

const ROOT: Shape = Shape { square: -2, canonical_degree: 0 };
const LINE: Shape = Shape { square: -1, canonical_degree: -1 };

impl Shape {
    /// With `D = a·e₀ + Σcᵢeᵢ`: `Σcᵢ = -3a - D·K` and `Σcᵢ² = a² - D²`.
    fn sums(&self, a: i64) -> (i64, i64) {
        (-3 * a - self.canonical_degree, a * a - self.square)
    }

    /// The `a` allowed by `(Σcᵢ)² ≤ n·Σcᵢ²`.
    fn a_range(&self, n: usize) -> Vec<i64> {
        // (9 - n)a² ≤ const, so a is bounded for n ≤ 8; 64 is far beyond it.
        (-64..=64)
            .filter(|&a| {
                let (s, t) = self.sums(a);
                t >= 0 && s * s <= n as i64 * t
            })
            .collect()
    }
}

/// Solutions of `Σcᵢ = s`, `Σcᵢ² = t` with `|cᵢ| ≤ coord_bound`, lexicographic.
fn solve_sums(n: usize, s: i64, t: i64, coord_bound: i64, out: &mut Vec<Vec<i64>>) {
    fn rec(
        n: usize,
        s: i64,
        t: i64,
        bound: i64,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let left = n - prefix.len();
        if left == 0 {
            if s == 0 && t == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Remaining coordinates must satisfy s² ≤ left·t.
        if t < 0 || s * s > left as i64 * t {
            return;
        }
        for c in -bound..=bound {
            if c * c > t {
                continue;
            }
            prefix.push(c);
            rec(n, s - c, t - c * c, bound, prefix, out);
            prefix.pop();
        }
    }
    rec(n, s, t, coord_bound, &mut Vec::with_capacity(n), out);
}

fn enumerate_shape(ctx: &DPContext, shape: Shape, a_values: &[i64], coord_bound: Option<i64>) -> Vec<PicVector> {
    let n = ctx.n();
    let mut out: Vec<PicVector> = a_values
        .par_iter()
        .flat_map_iter(|&a| {
            let (s, t) = shape.sums(a);
            let bound = coord_bound.unwrap_or_else(|| isqrt(t.max(0)));
            let mut sols = Vec::new();
            solve_sums(n, s, t, bound, &mut sols);
            sols.into_iter().map(move |e| PicVector::new(a, e))
        })
        .collect();
    out.sort();
    out
}

fn isqrt(t: i64) -> i64 {
    let mut r = (t as f64).sqrt() as i64;
    while r * r > t {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= t {
        r += 1;
    }
    r
}

/// Classes with `D² = -2` and `D·K = 0`, sorted.
pub fn enumerate_roots(ctx: &DPContext) -> Vec<PicVector> {
    enumerate_shape(ctx, ROOT, &ROOT.a_range(ctx.n()), None)
}

/// Classes with `L² = L·K = -1`, sorted.
pub fn enumerate_lines(ctx: &DPContext) -> Vec<PicVector> {
    enumerate_shape(ctx, LINE, &LINE.a_range(ctx.n()), None)
}

/// The analytic bounds used by the enumerations: the `e₀` range and the
/// largest coordinate bound over that range.
pub fn enumeration_box(ctx: &DPContext, lines: bool) -> (i64, i64, i64) {
    let shape = if lines { LINE } else { ROOT };
    let a = shape.a_range(ctx.n());
    let lo = *a.first().unwrap_or(&0);
    let hi = *a.last().unwrap_or(&0);
    let c = a.iter().map(|&a| isqrt(shape.sums(a).1.max(0))).max().unwrap_or(0);
    (lo, hi, c)
}

/// Re-runs an enumeration on an explicit box `a ∈ [a_lo, a_hi]`, `|cᵢ| ≤ c`.
pub fn enumerate_in_box(ctx: &DPContext, lines: bool, a_lo: i64, a_hi: i64, c: i64) -> Vec<PicVector> {
    let shape = if lines { LINE } else { ROOT };
    let a: Vec<i64> = (a_lo..=a_hi).collect();
    enumerate_shape(ctx, shape, &a, Some(c))
}

/// The line `-K - L` paired with `L`.
pub fn line_partner(ctx: &DPContext, line: &PicVector) -> PicVector {
    ctx.anticanonical().sub(line)
}

/// The first pair of disjoint lines (in lexicographic order) with `L₁ - L₂ = D`.
pub fn root_as_line_difference(
    ctx: &DPContext,
    lines: &[PicVector],
    root: &PicVector,
) -> Result<Option<(PicVector, PicVector)>> {
    ctx.check(root)?;
    if !ctx.is_root(root) {
        return Err(Error::NotARoot {
            square: dot(root, root),
            canonical: dot(root, ctx.canonical()),
        });
    }
    for l1 in lines {
        let l2 = l1.sub(root);
        if ctx.is_line(&l2) && dot(l1, &l2) == 0 {
            return Ok(Some((l1.clone(), l2)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NefPosition {
    Interior,
    Boundary,
    Outside,
}

/// Position of `D` relative to the nef cone of a degree-2 del Pezzo surface,
/// whose effective cone is spanned by the 56 lines.
pub fn nef_position(ctx: &DPContext, lines: &[PicVector], d: &PicVector) -> Result<NefPosition> {
    if ctx.dp_degree != 2 {
        return Err(Error::NefUnsupported(ctx.dp_degree));
    }
    ctx.check(d)?;
    let pairings: Vec<i64> = lines.iter().map(|l| dot(d, l)).collect();
    let sq = dot(d, d);
    Ok(if pairings.iter().any(|&p| p < 0) || sq < 0 {
        NefPosition::Outside
    } else if pairings.iter().all(|&p| p > 0) && sq > 0 {
        NefPosition::Interior
    } else {
        NefPosition::Boundary
    })
}

/// `χ(O_S(D)) = 1 + (D² - K·D)/2`.
pub fn surface_chi(ctx: &DPContext, d: &PicVector) -> Result<Q> {
    ctx.check(d)?;
    Ok(qi(1) + q((dot(d, d) - dot(ctx.canonical(), d)) as i128, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(d: i64) -> DPContext {
        DPContext::new(d).unwrap()
    }

    fn root_ij(n: usize, i: usize, j: usize) -> PicVector {
        PicVector::exceptional(n, i).sub(&PicVector::exceptional(n, j))
    }

    #[test]
    fn intersections() {
        let c = dp(2);
        assert_eq!(c.intersect(c.canonical(), c.canonical()).unwrap(), 2);
        let a12 = root_ij(7, 1, 2);
        assert_eq!(c.intersect(&a12, &a12).unwrap(), -2);
        let (e1, e2) = (PicVector::exceptional(7, 1), PicVector::exceptional(7, 2));
        assert_eq!(c.intersect(&e1, &e2).unwrap(), 0);
        assert_eq!(
            c.intersect(&e1, &PicVector::exceptional(6, 1)),
            Err(Error::RankMismatch(7, 8))
        );
    }

    #[test]
    fn canonical_square_is_degree() {
        for d in 1..=7 {
            let c = dp(d);
            assert_eq!(dot(c.canonical(), c.canonical()), d);
        }
        assert!(DPContext::new(0).is_err());
        assert!(DPContext::new(8).is_err());
    }

    #[test]
    fn counts() {
        let expected = [(1, 240, 240), (2, 126, 56), (3, 72, 27), (4, 40, 16), (5, 20, 10)];
        for (d, roots, lines) in expected {
            let c = dp(d);
            assert_eq!(enumerate_roots(&c).len(), roots, "roots, degree {d}");
            assert_eq!(enumerate_lines(&c).len(), lines, "lines, degree {d}");
        }
    }

    #[test]
    fn named_root_families_in_degree_two() {
        let c = dp(2);
        let roots = enumerate_roots(&c);
        let mut named = Vec::new();
        for i in 1..=7 {
            let mut e = vec![-1; 7];
            e[i - 1] = 0;
            named.push(PicVector::new(2, e));
        }
        for i in 1..=7 {
            for j in i + 1..=7 {
                named.push(root_ij(7, i, j));
                for k in j + 1..=7 {
                    let mut e = vec![0; 7];
                    e[i - 1] = -1;
                    e[j - 1] = -1;
                    e[k - 1] = -1;
                    named.push(PicVector::new(1, e));
                }
            }
        }
        assert_eq!(named.len(), 63);
        for r in &named {
            assert!(roots.contains(r), "{r}");
            assert!(roots.contains(&r.scale(-1)), "-{r}");
        }
    }

    #[test]
    fn line_differences() {
        let c = dp(2);
        let lines = enumerate_lines(&c);
        let (l1, l2) = root_as_line_difference(&c, &lines, &root_ij(7, 1, 2)).unwrap().unwrap();
        assert!(c.is_line(&l1) && c.is_line(&l2));
        assert_eq!(dot(&l1, &l2), 0);
        assert_eq!(l1.sub(&l2), root_ij(7, 1, 2));

        let a123 = PicVector::new(1, vec![-1, -1, -1, 0, 0, 0, 0]);
        let (l1, l2) = root_as_line_difference(&c, &lines, &a123).unwrap().unwrap();
        assert_eq!(l1.sub(&l2), a123);
        assert_eq!(dot(&l1, &l2), 0);

        let e1 = PicVector::exceptional(7, 1);
        assert!(matches!(
            root_as_line_difference(&c, &lines, &e1),
            Err(Error::NotARoot { square: -1, canonical: -1 })
        ));
    }

    #[test]
    fn nef_examples() {
        let c = dp(2);
        let lines = enumerate_lines(&c);
        assert_eq!(nef_position(&c, &lines, &c.anticanonical()).unwrap(), NefPosition::Interior);
        assert_eq!(
            nef_position(&c, &lines, &PicVector::exceptional(7, 1)).unwrap(),
            NefPosition::Outside
        );
        // Pullback of a line from the plane: nef, not big on the boundary side.
        assert_eq!(
            nef_position(&c, &lines, &PicVector::hyperplane(7)).unwrap(),
            NefPosition::Boundary
        );
        assert_eq!(
            nef_position(&dp(3), &[], &PicVector::hyperplane(6)),
            Err(Error::NefUnsupported(3))
        );
    }

    #[test]
    fn surface_chi_of_root_twists() {
        let c = dp(2);
        let h = c.anticanonical();
        let r = root_ij(7, 3, 5);
        assert_eq!(surface_chi(&c, &r).unwrap(), qi(0));
        assert_eq!(surface_chi(&c, &r.sub(&h)).unwrap(), qi(0));
        assert_eq!(surface_chi(&c, &r.add(&h)).unwrap(), qi(2));
        assert_eq!(surface_chi(&c, &PicVector::new(0, vec![0; 7])).unwrap(), qi(1));
    }

    #[test]
    fn enumeration_box_degree_two() {
        let c = dp(2);
        // a² ≤ 2·7/2 = 7 for roots.
        let (lo, hi, _) = enumeration_box(&c, false);
        assert_eq!((lo, hi), (-2, 2));
    }
}
