//! Chern characters of the objects used in the wall-crossing and moduli
//! computations, with their classes in `K_num(Ku(Y))` where they have one.

use serde::Serialize;

use crate::chern::{hrr_chi, ChernVector, FanoContext};
use crate::error::{Error, Result};
use crate::ku::{check_ext_table, class_from_chern, ku_orthogonality, ExtTable, ExtVerdict, KuClass};
use crate::rational::{q, qi, Q};

/// `Ch(ι_*F)` for a sheaf `F` on a hyperplane section `ι: S → Y`, from
/// Grothendieck–Riemann–Roch `Ch(ι_*F) = ι_*(Ch(F)·td(N)⁻¹)` with
/// `N = O_S(h)`, `td(N)⁻¹ = 1 - h/2 + h²/6` and `h² = d` points.
///
/// `F` is described by its rank, `c₁(F)·h`, and `Ch₂(F)` in points. Curve
/// classes push forward to `(deg/d)·H²`, points to `H³/d`.
pub fn pushforward_from_hyperplane(ctx: &FanoContext, rank: Q, c1_dot_h: Q, ch2_points: Q) -> ChernVector {
    let d = ctx.d();
    let curve_degree = c1_dot_h - rank * d / qi(2);
    let points = ch2_points - c1_dot_h / qi(2) + rank * d / qi(6);
    ChernVector::new(qi(0), rank, curve_degree / d, points / d)
}

pub fn skyscraper(ctx: &FanoContext) -> ChernVector {
    ctx.point()
}

pub fn ideal_of_point(ctx: &FanoContext) -> ChernVector {
    ChernVector::unit() - ctx.point()
}

/// `Ch(O_S)` for a hyperplane section `S`.
pub fn hyperplane_section(ctx: &FanoContext) -> ChernVector {
    pushforward_from_hyperplane(ctx, qi(1), qi(0), qi(0))
}

/// `Ch(O_l)` for a line: `Ch₂ = H²/d`, and `Ch₃` fixed by `χ(O_l) = 1`.
pub fn structure_sheaf_of_line(ctx: &FanoContext) -> ChernVector {
    let partial = ChernVector::new(qi(0), qi(0), ctx.d().recip(), qi(0));
    let c3 = (qi(1) - hrr_chi(ctx, &partial)) / ctx.d();
    ChernVector::new(qi(0), qi(0), ctx.d().recip(), c3)
}

/// `ι_*O_S(D)` for a root `D` (`D² = -2`, `D·h = 0`).
pub fn root_pushforward(ctx: &FanoContext) -> ChernVector {
    pushforward_from_hyperplane(ctx, qi(1), qi(0), qi(-1))
}

/// Numerical rotation functor `x ↦ L_O(x ⊗ O(1))`, i.e.
/// `Ch(x(1)) - χ(O, x(1))·Ch(O)`.
pub fn rotate_chern(ctx: &FanoContext, x: &ChernVector) -> ChernVector {
    let twisted = *x * ChernVector::line_bundle(1);
    twisted - ChernVector::unit().scale(hrr_chi(ctx, &twisted))
}

/// Matrix of [`rotate_chern`] in the basis `(v, w)` (columns are images).
pub fn rotation_matrix_for_degree(ctx: &FanoContext) -> Result<[[i64; 2]; 2]> {
    let col = |x: ChernVector| -> Result<[i64; 2]> {
        let c = class_from_chern(ctx, &rotate_chern(ctx, &x))?;
        let k = c.integral().ok_or(Error::NotInSpan { coefficient: "integral" })?;
        Ok([k.a, k.b])
    };
    let rv = col(ctx.v())?;
    let rw = col(ctx.w())?;
    Ok([[rv[0], rw[0]], [rv[1], rw[1]]])
}

/// Degree-4 spinor bundles, `Ch(S_±) = 2 + H - H³/12`.
pub fn spinor() -> ChernVector {
    ChernVector::new(qi(2), qi(1), qi(0), q(-1, 12))
}

/// Degree-5 tautological subbundle, `Ch(S) = 2 - H + H²/10 + H³/30`.
pub fn tautological_sub() -> ChernVector {
    ChernVector::new(qi(2), qi(-1), q(1, 10), q(1, 30))
}

/// Degree-5 dual tautological quotient, `Ch(Q^∨) = 3 - H - H²/10 + H³/30`.
pub fn tautological_quotient_dual() -> ChernVector {
    ChernVector::new(qi(3), qi(-1), q(-1, 10), q(1, 30))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
pub enum KuMembership {
    InKu(KuClass),
    NotInKu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFixture {
    pub table: ExtTable,
    /// Whether `Ext^i ≅ Ext^{2-i}` numerically (object fixed by the Serre
    /// functor up to shift).
    pub serre_symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub chern: ChernVector,
    pub ku: KuMembership,
    pub ext: Option<ExtFixture>,
    /// How the Chern vector is obtained.
    pub source: String,
}

fn entry(name: &str, chern: ChernVector, ku: KuMembership, source: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.to_owned(),
        chern,
        ku,
        ext: None,
        source: source.to_owned(),
    }
}

fn with_ext(mut e: CatalogEntry, table: ExtTable, serre_symmetric: bool) -> CatalogEntry {
    e.ext = Some(ExtFixture { table, serre_symmetric });
    e
}

/// All named objects for `Y_d`.
pub fn catalog(d: i64) -> Result<Vec<CatalogEntry>> {
    use KuMembership::{InKu, NotInKu};
    let ctx = FanoContext::new(d)?;
    let du = d as u64;
    let w = KuClass::W;
    let o = ChernVector::unit();
    let o_minus = ChernVector::line_bundle(-1);
    let i_p = ideal_of_point(&ctx);
    let i_p_s = hyperplane_section(&ctx) - skyscraper(&ctx);
    let e_p = o_minus.shift(1) + i_p;

    let mut out = vec![
        entry("O_Y", o, NotInKu, "unit class"),
        entry("O_Y(1)", ChernVector::line_bundle(1), NotInKu, "exp(H)"),
        entry("O_Y(-1)", o_minus, NotInKu, "exp(-H)"),
        entry("C_p", skyscraper(&ctx), NotInKu, "[pt] = H^3/d"),
        entry("I_p", i_p, NotInKu, "Ch(O_Y) - Ch(C_p)"),
        entry("O_S", hyperplane_section(&ctx), NotInKu, "GRR pushforward of O_S"),
        with_ext(
            entry("I_{p|S}", i_p_s, InKu(w), "Ch(O_S) - Ch(C_p)"),
            ExtTable::new(1, du + 3, 2, 0),
            false,
        ),
        with_ext(
            entry("I_{p|S} (p singular on S)", i_p_s, InKu(w), "Ch(O_S) - Ch(C_p)"),
            ExtTable::new(1, du + 4, 3, 0),
            false,
        ),
        entry("O_l", structure_sheaf_of_line(&ctx), NotInKu, "Ch2 = H^2/d, Ch3 from chi(O_l) = 1"),
        entry(
            "I_l",
            o - structure_sheaf_of_line(&ctx),
            InKu(KuClass::V),
            "Ch(O_Y) - Ch(O_l)",
        ),
        entry("E_p", e_p, InKu(w), "Ch(O_Y(-1)[1]) + Ch(I_p)"),
        with_ext(
            entry("iota_* O_S(D), D a root", root_pushforward(&ctx), InKu(w), "GRR pushforward of O_S(D)"),
            ExtTable::new(1, du + 1, 0, 0),
            false,
        ),
        entry(
            "R(I_l)",
            rotate_chern(&ctx, &(o - structure_sheaf_of_line(&ctx))),
            InKu(KuClass::new(1 - d, 1)),
            "Ch(I_l(1)) - chi(I_l(1)) Ch(O_Y)",
        ),
        entry(
            "R(E_p)",
            rotate_chern(&ctx, &e_p),
            InKu(KuClass::new(-d, 1)),
            "Ch(I_p(1)) - chi(I_p(1)) Ch(O_Y)",
        ),
    ];

    if d == 2 {
        out.push(with_ext(
            entry("E_p (p outside R)", e_p, InKu(w), "Ext^1 = Ext^1(I_p, I_p)"),
            ExtTable::new(1, 3, 0, 0),
            false,
        ));
        out.push(with_ext(
            entry("E_p (p in R)", e_p, InKu(w), "Ext^1 = Ext^1(I_p, I_p) + V_p, dim V_p = 1"),
            ExtTable::new(1, 4, 1, 0),
            true,
        ));
    }
    if d == 4 {
        out.push(entry("S_+", spinor(), NotInKu, "spinor bundle, 2 + H - H^3/12"));
        out.push(entry(
            "S(-1)",
            spinor() * o_minus,
            InKu(KuClass::new(2, -1)),
            "Ch(S_+) exp(-H)",
        ));
    }
    if d == 5 {
        out.push(entry("S", tautological_sub(), InKu(KuClass::new(2, -1)), "2 - H + H^2/10 + H^3/30"));
        out.push(entry(
            "Q^v",
            tautological_quotient_dual(),
            InKu(KuClass::new(3, -1)),
            "3 - H - H^2/10 + H^3/30",
        ));
        out.push(entry(
            "2[Q^v] - 3[S]",
            tautological_quotient_dual().scale(qi(2)) - tautological_sub().scale(qi(3)),
            InKu(w),
            "quiver representation S^3 -> (Q^v)^2",
        ));
    }
    Ok(out)
}

pub fn lookup(d: i64, name: &str) -> Result<Option<CatalogEntry>> {
    Ok(catalog(d)?.into_iter().find(|e| e.name == name))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryVerdict {
    pub name: String,
    /// `(χ(O_Y, E), χ(O_Y(1), E))` as strings.
    pub orthogonality: (String, String),
    /// Both vanish, as required exactly for classes in `Ku(Y)`.
    pub ku_membership_ok: bool,
    pub class_round_trip_ok: bool,
    pub ext: Option<ExtVerdict>,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogVerdict {
    pub degree: i64,
    pub entries: Vec<EntryVerdict>,
    pub passes: bool,
}

/// Checks every entry: χ-orthogonality to `O_Y, O_Y(1)` matches the Ku flag,
/// the stated class reproduces the Chern vector, and Ext tables are
/// consistent with the Euler form.
pub fn verify_catalog(d: i64) -> Result<CatalogVerdict> {
    let ctx = FanoContext::new(d)?;
    let mut entries = Vec::new();
    for e in catalog(d)? {
        let (a, b) = ku_orthogonality(&ctx, &e.chern);
        let orthogonal = a == qi(0) && b == qi(0);
        let (ku_membership_ok, class_round_trip_ok, ext) = match e.ku {
            KuMembership::InKu(cls) => {
                let round = cls.embed(&ctx) == e.chern
                    && class_from_chern(&ctx, &e.chern).ok().and_then(|c| c.integral()) == Some(cls);
                let ext = e
                    .ext
                    .map(|f| check_ext_table(d, cls, &f.table, f.serre_symmetric))
                    .transpose()?;
                (orthogonal, round, ext)
            }
            KuMembership::NotInKu => (!orthogonal, true, None),
        };
        let passes = ku_membership_ok && class_round_trip_ok && ext.is_none_or(|v| v.passes());
        entries.push(EntryVerdict {
            name: e.name,
            orthogonality: (a.to_string(), b.to_string()),
            ku_membership_ok,
            class_round_trip_ok,
            ext,
            passes,
        });
    }
    let passes = entries.iter().all(|e| e.passes);
    Ok(CatalogVerdict { degree: d, entries, passes })
}
