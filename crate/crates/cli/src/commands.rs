use std::fmt::Write;

use serde::Serialize;

use kuwalls_core::chern::chi_pair;
use kuwalls_core::checks::{self, CheckReport};
use kuwalls_core::del_pezzo::{
    enumerate_lines, enumerate_roots, line_partner, nef_position, root_as_line_difference, DPContext,
    NefPosition, PicVector,
};
use kuwalls_core::ku::{euler_form, euler_matrix};
use kuwalls_core::rational::{parse_q, Rat, Q};
use kuwalls_core::walls::{
    chamber_report, DecompositionCheck, DenominatorLattice, SearchConfig, SearchRules, WallLocus,
};
use kuwalls_core::{ChernVector, FanoContext, KuClass};

use crate::output::OutputDocument;
use crate::{class_spec, svg, CheckArgs, RootsArgs, WallsArgs};

/// Bad input: reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<kuwalls_core::Error> for UsageError {
    fn from(e: kuwalls_core::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<anyhow::Error> for UsageError {
    fn from(e: anyhow::Error) -> Self {
        Self(format!("{e:#}"))
    }
}

pub struct Outcome {
    pub text: String,
    pub json: String,
    pub code: u8,
}

fn ok<P: Serialize>(command: &str, degree: i64, payload: P, text: String) -> Outcome {
    Outcome { text, json: OutputDocument::new(command, degree, payload).to_json(), code: 0 }
}

/// `√x` when `x` is the square of a rational.
fn exact_sqrt(x: &Q) -> Option<Q> {
    let (n, d) = (*x.numer(), *x.denom());
    if n <= 0 {
        return None;
    }
    let (rn, rd) = (n.isqrt(), d.isqrt());
    (rn * rn == n && rd * rd == d).then(|| Q::new(rn, rd))
}

// ---------------------------------------------------------------- euler

#[derive(Serialize)]
struct EulerPayload {
    basis: [&'static str; 2],
    euler_form: [[i64; 2]; 2],
    chi_pair: [[Rat; 2]; 2],
    agree: bool,
}

pub fn euler(d: i64) -> Result<Outcome, UsageError> {
    let ctx = FanoContext::new(d)?;
    let basis = [KuClass::V, KuClass::W];
    let chern = [ctx.v(), ctx.w()];
    let mut ef = [[0i64; 2]; 2];
    let mut cp = [[Rat(Q::from_integer(0)); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            ef[i][j] = euler_form(d, basis[i], basis[j])?;
            cp[i][j] = Rat(chi_pair(&ctx, &chern[i], &chern[j]));
        }
    }
    let agree = (0..2).all(|i| (0..2).all(|j| cp[i][j].0 == Q::from_integer(ef[i][j] as i128)))
        && ef == euler_matrix(d)?;
    let show = |m: [[String; 2]; 2]| format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
    let text = format!(
        "Euler form on (v, w), degree {d}\n  euler_form: {}\n  chi_pair:   {}\n  agree: {agree}\n",
        show(ef.map(|r| r.map(|x| x.to_string()))),
        show(cp.map(|r| r.map(|x| x.to_string()))),
    );
    let payload = EulerPayload { basis: ["v", "w"], euler_form: ef, chi_pair: cp, agree };
    Ok(ok("euler", d, payload, text))
}

// ---------------------------------------------------------------- walls

#[derive(Serialize)]
struct CandidateOut {
    x: i128,
    y: Rat,
    z: Rat,
    discriminant: Rat,
    /// The candidate's truncated character before twisting, `Ch₃ = 0`.
    untwisted: ChernVector,
}

#[derive(Serialize)]
struct WallOut {
    locus: WallLocus,
    alpha_sq: Rat,
    /// Exact `α` when `α²` is a rational square.
    alpha: Option<Rat>,
    candidates: Vec<CandidateOut>,
}

#[derive(Serialize)]
struct WallsPayload {
    class: String,
    target: ChernVector,
    config: SearchConfig,
    same_sign_applied: bool,
    walls: Vec<WallOut>,
    chambers_on_line: usize,
    decomposition: Option<DecompositionCheck>,
}

fn parse_denoms(s: &str) -> Result<DenominatorLattice, UsageError> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || UsageError(format!("--denoms expects two positive integers a,b, got {s:?}"));
    let [a, b] = parts.as_slice() else {
        return Err(bad());
    };
    let a: i128 = a.trim().parse().map_err(|_| bad())?;
    let b: i128 = b.trim().parse().map_err(|_| bad())?;
    Ok(DenominatorLattice::new(a, b)?)
}

fn describe_locus(w: &WallLocus) -> String {
    match w {
        WallLocus::Semicircle { center_beta, radius_sq } => {
            format!("semicircle center {center_beta}, radius^2 {radius_sq}")
        }
        WallLocus::Vertical { beta0 } => format!("vertical line beta = {beta0}"),
    }
}

pub fn walls(args: &WallsArgs) -> Result<Outcome, UsageError> {
    let ctx = FanoContext::new(args.degree)?;
    let target = class_spec::parse_class(&ctx, &args.class)?;
    let beta0 = parse_q(&args.beta)?;
    let lattice = match &args.denoms {
        Some(s) => parse_denoms(s)?,
        None => DenominatorLattice::default_for(&ctx),
    };
    let mut config = SearchConfig::new(beta0, lattice, args.x_bound);
    if let Some(z) = args.z_bound {
        config.z_bound = z;
    }
    config = config.with_rules(SearchRules {
        same_sign: match args.same_sign.as_str() {
            "on" => Some(true),
            "off" => Some(false),
            _ => None,
        },
        sheaf_subobject: !args.allow_quotients,
        integral_chern: args.integral_chern,
    });
    let report = chamber_report(&ctx, &target, &config)?;

    if let Some(path) = &args.svg {
        let title = format!("walls for {} on Y_{} along beta = {}", args.class, ctx.degree(), beta0);
        std::fs::write(path, svg::render(&report, &title))
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }

    let on_off = |b: bool| if b { "on" } else { "off" };
    let mut text = String::new();
    let _ = writeln!(text, "walls for {} = {} on Y_{} along beta = {}", args.class, target, ctx.degree(), beta0);
    let _ = writeln!(
        text,
        "  lattice: Ch1 in (1/{})Z, Ch2 in (1/{})Z; x_bound {}, z_bound {}",
        lattice.ch1, lattice.ch2, config.x_bound, config.z_bound
    );
    let _ = writeln!(
        text,
        "  rules: same_sign {} ({}), sheaf_subobject {}, integral_chern {}",
        on_off(report.same_sign_applied),
        args.same_sign,
        on_off(config.rules.sheaf_subobject),
        on_off(config.rules.integral_chern)
    );
    let _ = writeln!(text, "  {} wall(s), {} chamber(s)", report.walls.len(), report.chambers_on_line);

    let mut walls_out = Vec::new();
    for (i, w) in report.walls.iter().enumerate() {
        let alpha = exact_sqrt(&w.alpha_sq);
        let alpha_txt = alpha.map_or_else(|| format!("sqrt({})", w.alpha_sq), |a| a.to_string());
        let _ = writeln!(
            text,
            "  wall {}: {}; alpha^2 = {} (alpha = {})",
            i + 1,
            describe_locus(&w.locus),
            w.alpha_sq,
            alpha_txt
        );
        let mut cands = Vec::new();
        for c in &w.candidates {
            let untwisted = c.untwisted(beta0);
            let _ = writeln!(
                text,
                "    candidate (x, y, z) = ({}, {}, {}), Delta = {}, Ch = {}",
                c.x, c.y, c.z, c.discriminant, untwisted
            );
            cands.push(CandidateOut {
                x: c.x,
                y: Rat(c.y),
                z: Rat(c.z),
                discriminant: Rat(c.discriminant),
                untwisted,
            });
        }
        walls_out.push(WallOut { locus: w.locus, alpha_sq: Rat(w.alpha_sq), alpha: alpha.map(Rat), candidates: cands });
    }
    if let Some(dec) = &report.decomposition {
        let _ = writeln!(
            text,
            "  Ch(I_p) + Ch(O_Y(-1)[1]) = {}: {}",
            dec.sum,
            if dec.holds { "holds" } else { "FAILS" }
        );
    }

    let payload = WallsPayload {
        class: args.class.clone(),
        target,
        config,
        same_sign_applied: report.same_sign_applied,
        walls: walls_out,
        chambers_on_line: report.chambers_on_line,
        decomposition: report.decomposition.clone(),
    };
    Ok(ok("walls", ctx.degree(), payload, text))
}

// ---------------------------------------------------------------- roots

#[derive(Serialize)]
struct LineDifference {
    root: PicVector,
    l1: PicVector,
    l2: PicVector,
}

#[derive(Serialize)]
struct NefSummary {
    interior: usize,
    boundary: usize,
    outside: usize,
    total: usize,
    summary: String,
}

#[derive(Serialize)]
struct RootsPayload {
    dp_degree: i64,
    picard_rank: usize,
    canonical: PicVector,
    root_count: usize,
    line_count: usize,
    roots: Vec<PicVector>,
    lines: Vec<PicVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<[PicVector; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line_differences: Option<Vec<Option<LineDifference>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nef_check: Option<NefSummary>,
}

pub fn roots(args: &RootsArgs) -> Result<Outcome, UsageError> {
    let dp = DPContext::new(args.dp)?;
    if args.nef_check && dp.dp_degree() != 2 {
        return Err(kuwalls_core::Error::NefUnsupported(dp.dp_degree()).into());
    }
    let roots = enumerate_roots(&dp);
    let lines = enumerate_lines(&dp);
    let mut text = format!("del Pezzo degree {}: {} roots, {} lines\n", dp.dp_degree(), roots.len(), lines.len());

    let pairs = args.pairs.then(|| {
        let pairs: Vec<[PicVector; 2]> = lines
            .iter()
            .filter_map(|l| {
                let p = line_partner(&dp, l);
                (*l < p && dp.is_line(&p)).then(|| [l.clone(), p])
            })
            .collect();
        let _ = writeln!(text, "  {} line pairs (L, -K-L)", pairs.len());
        for [a, b] in &pairs {
            let _ = writeln!(text, "    {a} + {b} = -K");
        }
        pairs
    });

    let line_differences = if args.as_line_diff {
        let mut out = Vec::new();
        let mut found = 0;
        for r in &roots {
            let diff = root_as_line_difference(&dp, &lines, r)?;
            match &diff {
                Some((l1, l2)) => {
                    found += 1;
                    let _ = writeln!(text, "    {r} = {l1} - {l2}");
                }
                None => {
                    let _ = writeln!(text, "    {r}: no disjoint pair");
                }
            }
            out.push(diff.map(|(l1, l2)| LineDifference { root: r.clone(), l1, l2 }));
        }
        let _ = writeln!(text, "  {found}/{} roots are differences of disjoint lines", roots.len());
        Some(out)
    } else {
        None
    };

    let nef_check = if args.nef_check {
        let two_k = dp.canonical().scale(2);
        let (mut interior, mut boundary, mut outside) = (0, 0, 0);
        for r in &roots {
            match nef_position(&dp, &lines, &r.sub(&two_k))? {
                NefPosition::Interior => interior += 1,
                NefPosition::Boundary => boundary += 1,
                NefPosition::Outside => outside += 1,
            }
        }
        let summary = format!("{interior}/{} of D-2K interior", roots.len());
        let _ = writeln!(text, "  {summary}");
        Some(NefSummary { interior, boundary, outside, total: roots.len(), summary })
    } else {
        None
    };

    let payload = RootsPayload {
        dp_degree: dp.dp_degree(),
        picard_rank: dp.n() + 1,
        canonical: dp.canonical().clone(),
        root_count: roots.len(),
        line_count: lines.len(),
        roots,
        lines,
        pairs,
        line_differences,
        nef_check,
    };
    Ok(ok("roots", dp.dp_degree(), payload, text))
}

// ---------------------------------------------------------------- check

pub fn check(args: &CheckArgs) -> Result<Outcome, UsageError> {
    let degrees: Vec<i64> = match args.degree {
        Some(d) => {
            FanoContext::new(d)?;
            vec![d]
        }
        None => FanoContext::all().map(|c| c.degree()).collect(),
    };
    let report: CheckReport = checks::run(&degrees)?;
    let mut text = String::new();
    for g in &report.groups {
        let _ = writeln!(text, "degree {}", g.degree);
        for i in &g.items {
            let _ = writeln!(text, "  {}: {}  [{}]", i.name, if i.passed { "PASS" } else { "FAIL" }, i.detail);
        }
    }
    let _ = writeln!(text, "{} passed, {} failed", report.passed, report.failed);
    let code = if report.all_passed() { 0 } else { 1 };
    let degree = args.degree.unwrap_or(0);
    let mut out = ok("check", degree, &report, text);
    out.code = code;
    Ok(out)
}
