//! Acceptance criteria. Every criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails or exceeds its time budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kuwalls_core::catalog::{
    self, ideal_of_point, spinor, tautological_quotient_dual, tautological_sub, KuMembership,
};
use kuwalls_core::chern::ChernVector;
use kuwalls_core::del_pezzo::{
    enumerate_in_box, enumerate_lines, enumerate_roots, enumeration_box, line_partner, nef_position,
    root_as_line_difference, surface_chi, DPContext, NefPosition,
};
use kuwalls_core::ku::{
    apply, check_ext_table, class_from_chern, classes_with_self_pairing, in_ku_numerically, mat_mul,
    rotation_matrix, ExtTable, KuClass,
};
use kuwalls_core::rational::{q, qi, Q};
use kuwalls_core::tilt::discriminant;
use kuwalls_core::walls::{destabilizer_search, DenominatorLattice, SearchConfig, WallLocus};
use kuwalls_core::{chi_pair, FanoContext};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    elapsed: Duration,
    budget: Option<Duration>,
    note: String,
}

fn criterion(
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let within = budget.is_none_or(|b| elapsed <= b);
    let (passed, note) = match result {
        Ok(note) if within => (true, note),
        Ok(note) => (false, format!("{note}; exceeded budget")),
        Err(e) => (false, e),
    };
    Outcome { id, name, passed, elapsed, budget, note }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn euler_matrix_criterion() -> Result<String, String> {
    for ctx in FanoContext::all() {
        let (v, w) = (ctx.v(), ctx.w());
        let d = ctx.d();
        let got = [
            [chi_pair(&ctx, &v, &v), chi_pair(&ctx, &v, &w)],
            [chi_pair(&ctx, &w, &v), chi_pair(&ctx, &w, &w)],
        ];
        let want = [[qi(-1), qi(-1)], [qi(1) - d, -d]];
        ensure(got == want, format!("degree {}: {got:?}", ctx.degree()))?;
    }
    Ok("d = 1..5 exact".into())
}

fn unique_wall_criterion() -> Result<String, String> {
    for ctx in FanoContext::all() {
        let lat = DenominatorLattice::half_eighth();
        let found = destabilizer_search(&ctx, &ctx.w(), &SearchConfig::new(q(-1, 2), lat, 5))
            .map_err(|e| e.to_string())?;
        ensure(found.len() == 1, format!("degree {}: {} candidates", ctx.degree(), found.len()))?;
        let a = found[0];
        ensure((a.x, a.y, a.z) == (1, q(1, 2), q(1, 8)), format!("candidate {:?}", (a.x, a.y, a.z)))?;
        ensure(a.wall.alpha_sq_at(q(-1, 2)) == Some(q(1, 4)), "wall does not meet beta=-1/2 at 1/4")?;
        ensure(
            a.wall == WallLocus::Semicircle { center_beta: q(-1, 2), radius_sq: q(1, 4) },
            format!("wall {:?}", a.wall),
        )?;
        let doubled = destabilizer_search(
            &ctx,
            &ctx.w(),
            &SearchConfig { x_bound: 10, z_bound: 10, ..SearchConfig::new(q(-1, 2), lat, 10) },
        )
        .map_err(|e| e.to_string())?;
        ensure(doubled == found, "result changed when doubling x_bound")?;
    }
    Ok("(1, 1/2, 1/8), alpha^2 = 1/4, stable at x_bound 10".into())
}

fn decomposition_criterion() -> Result<String, String> {
    for ctx in FanoContext::all() {
        let sum = ideal_of_point(&ctx) + ChernVector::line_bundle(-1).shift(1);
        ensure(sum == ctx.w(), format!("degree {}: {sum}", ctx.degree()))?;
    }
    Ok("all degrees".into())
}

fn discriminant_criterion() -> Result<String, String> {
    for ctx in FanoContext::all() {
        ensure(discriminant(&ctx.w()) == qi(1), "Delta(w) != 1")?;
        let lat = DenominatorLattice::half_eighth();
        let found = destabilizer_search(&ctx, &ctx.w(), &SearchConfig::new(q(-1, 2), lat, 5))
            .map_err(|e| e.to_string())?;
        for a in found {
            let delta = discriminant(&ChernVector::new(qi(a.x), a.y, a.z, qi(0)));
            let chain = -qi(8) * qi(a.x) * a.z;
            let in_range = delta >= qi(0) && delta <= qi(1);
            let chain_ok = chain >= qi(-1) && chain <= qi(3);
            ensure(in_range && chain_ok, format!("Delta = {delta}, -8xz = {chain}"))?;
            // With y = 1/2 the two conditions are the same inequality.
            ensure(in_range == chain_ok, "bound chain not equivalent")?;
        }
    }
    Ok("Delta(w) = 1, Delta(A) = 0, -8xz = -1".into())
}

fn rotation_criterion() -> Result<String, String> {
    let r = rotation_matrix();
    ensure(apply(&r, KuClass::V) == KuClass::W - KuClass::V, "R(v) != w - v")?;
    ensure(
        apply(&r, KuClass::W) == KuClass::W - KuClass::V - KuClass::V,
        "R(w) != w - 2v",
    )?;
    ensure(mat_mul(&r, &r) == [[-1, 0], [0, -1]], "R^2 != -Id")?;
    Ok(format!("R = {r:?}"))
}

fn self_pairing_criterion() -> Result<String, String> {
    let expected = vec![KuClass::new(-2, 1), KuClass::new(0, -1), KuClass::new(0, 1), KuClass::new(2, -1)];
    for bound in 2..=30 {
        let got = classes_with_self_pairing(2, -2, bound).map_err(|e| e.to_string())?;
        ensure(got == expected, format!("bound {bound}: {got:?}"))?;
    }
    Ok("{+-w, +-(2v-w)} for bounds 2..30".into())
}

fn ext_table_criterion() -> Result<String, String> {
    for d in 1..=5i64 {
        let du = d as u64;
        for t in [ExtTable::new(1, du + 3, 2, 0), ExtTable::new(1, du + 4, 3, 0), ExtTable::new(1, du + 1, 0, 0)] {
            ensure(t.alternating_sum() == -d, format!("degree {d}: {t:?}"))?;
            let v = check_ext_table(d, KuClass::W, &t, false).map_err(|e| e.to_string())?;
            ensure(v.passes(), format!("degree {d}: {v:?}"))?;
        }
    }
    let key = ExtTable::new(1, 4, 1, 0);
    ensure(key.alternating_sum() == -2, "(1,4,1,0) does not sum to -2")?;
    ensure(check_ext_table(2, KuClass::W, &key, true).map_err(|e| e.to_string())?.passes(), "(1,4,1,0)")?;
    Ok("all tables".into())
}

fn counts_criterion() -> Result<String, String> {
    let expected = [(1, 240, 240), (2, 126, 56), (3, 72, 27), (4, 40, 16), (5, 20, 10)];
    for (d, nr, nl) in expected {
        let ctx = DPContext::new(d).map_err(|e| e.to_string())?;
        let roots = enumerate_roots(&ctx);
        let lines = enumerate_lines(&ctx);
        ensure(roots.len() == nr && lines.len() == nl, format!("degree {d}: {}/{}", roots.len(), lines.len()))?;
        ensure(roots.iter().all(|r| ctx.is_root(r)), "non-root returned")?;
        ensure(lines.iter().all(|l| ctx.is_line(l)), "non-line returned")?;
    }
    Ok("240/240, 126/56, 72/27, 40/16, 20/10".into())
}

fn line_difference_criterion() -> Result<String, String> {
    let ctx = DPContext::new(2).unwrap();
    let roots = enumerate_roots(&ctx);
    let lines = enumerate_lines(&ctx);
    let mut ok = 0;
    for r in &roots {
        let (l1, l2) = root_as_line_difference(&ctx, &lines, r)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("root {r} has no decomposition"))?;
        ensure(ctx.is_line(&l1) && ctx.is_line(&l2), "not lines")?;
        ensure(ctx.intersect(&l1, &l2).unwrap() == 0 && l1.sub(&l2) == *r, "bad pair")?;
        ok += 1;
    }
    let line_set: BTreeSet<_> = lines.iter().cloned().collect();
    let mut pairs = BTreeSet::new();
    for l in &lines {
        let p = line_partner(&ctx, l);
        ensure(p != *l && line_set.contains(&p), format!("partner of {l}"))?;
        ensure(line_partner(&ctx, &p) == *l, "involution")?;
        pairs.insert(if *l < p { (l.clone(), p) } else { (p, l.clone()) });
    }
    ensure(pairs.len() == 28, format!("{} pairs", pairs.len()))?;
    Ok(format!("{ok}/126 roots, {} pairs", pairs.len()))
}

fn nef_criterion() -> Result<String, String> {
    let ctx = DPContext::new(2).unwrap();
    let roots = enumerate_roots(&ctx);
    let lines = enumerate_lines(&ctx);
    let two_k = ctx.canonical().scale(2);
    let interior = roots
        .iter()
        .filter(|r| nef_position(&ctx, &lines, &r.sub(&two_k)) == Ok(NefPosition::Interior))
        .count();
    ensure(interior == 126, format!("{interior}/126"))?;
    Ok("126/126 of D-2K interior".into())
}

fn surface_chi_criterion() -> Result<String, String> {
    let ctx = DPContext::new(2).unwrap();
    let h = ctx.anticanonical();
    for r in enumerate_roots(&ctx) {
        let vals = (
            surface_chi(&ctx, &r).unwrap(),
            surface_chi(&ctx, &r.sub(&h)).unwrap(),
            surface_chi(&ctx, &r.add(&h)).unwrap(),
        );
        ensure(vals == (qi(0), qi(0), qi(2)), format!("root {r}: {vals:?}"))?;
    }
    Ok("126/126".into())
}

fn degree_identities_criterion() -> Result<String, String> {
    let c4 = FanoContext::new(4).unwrap();
    let s_minus = spinor() * ChernVector::line_bundle(-1);
    let cls = class_from_chern(&c4, &s_minus).map_err(|e| e.to_string())?.integral();
    ensure(cls == Some(KuClass::new(2, -1)), format!("[S(-1)] = {cls:?}"))?;
    let c5 = FanoContext::new(5).unwrap();
    let x = tautological_quotient_dual().scale(qi(2)) - tautological_sub().scale(qi(3));
    ensure(x == c5.w(), format!("2[Q^v] - 3[S] = {x}"))?;
    Ok("[S(-1)] = 2v-w, w = 2[Q^v]-3[S]".into())
}

fn ku_membership_criterion() -> Result<String, String> {
    let mut n = 0;
    for ctx in FanoContext::all() {
        for e in catalog::catalog(ctx.degree()).map_err(|e| e.to_string())? {
            if let KuMembership::InKu(_) = e.ku {
                ensure(in_ku_numerically(&ctx, &e.chern), format!("degree {}: {}", ctx.degree(), e.name))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} entries"))
}

fn rational() -> impl Strategy<Value = Q> {
    (-60i128..=60, 1i128..=12).prop_map(|(n, d)| Q::new(n, d))
}

fn chern() -> impl Strategy<Value = ChernVector> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| ChernVector::new(a, b, c, d))
}

fn property_criterion() -> Result<String, String> {
    let run = |name: &str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| -> Result<(), String> {
        let mut runner = TestRunner::new(Config::with_cases(1000));
        f(&mut runner).map_err(|e| format!("{name}: {e}"))
    };
    run("twist additivity", &|r| {
        r.run(&(chern(), rational(), rational()), |(x, a, b)| {
            prop_assert_eq!(x.twist(a).twist(b), x.twist(a + b));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    run("discriminant twist invariance", &|r| {
        r.run(&(chern(), rational()), |(x, b)| {
            prop_assert_eq!(discriminant(&x.twist(b)), discriminant(&x));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    run("ring axioms", &|r| {
        r.run(&(chern(), chern(), chern()), |(x, y, z)| {
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(ChernVector::unit() * x, x);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    run("enumeration saturation", &|r| {
        r.run(&(1i64..=5, any::<bool>(), 1i64..=2), |(d, lines, grow)| {
            let ctx = DPContext::new(d).unwrap();
            let (lo, hi, c) = enumeration_box(&ctx, lines);
            let wide = enumerate_in_box(&ctx, lines, lo - grow, hi + grow, c + grow);
            let base = if lines { enumerate_lines(&ctx) } else { enumerate_roots(&ctx) };
            prop_assert_eq!(wide, base);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    Ok("4 x 1000 cases".into())
}

#[test]
fn acceptance() {
    let ms = Duration::from_millis;
    let outcomes = vec![
        criterion(1, "Euler matrix from chi_pair", Some(ms(1)), euler_matrix_criterion),
        criterion(2, "unique wall for w at beta = -1/2", Some(ms(100)), unique_wall_criterion),
        criterion(3, "Ch(I_p) + Ch(O_Y(-1)[1]) = w", None, decomposition_criterion),
        criterion(4, "Delta fixture and bound chain", None, discriminant_criterion),
        criterion(5, "rotation action", None, rotation_criterion),
        criterion(6, "chi = -2 classes at d = 2", None, self_pairing_criterion),
        criterion(7, "Ext-table alternating sums", None, ext_table_criterion),
        criterion(8, "root/line counts", Some(ms(2000)), counts_criterion),
        criterion(9, "roots as differences of disjoint lines; 28 line pairs", None, line_difference_criterion),
        criterion(10, "D - 2K in nef interior", None, nef_criterion),
        criterion(11, "surface chi triple", None, surface_chi_criterion),
        criterion(12, "degree 4 and 5 identities", None, degree_identities_criterion),
        criterion(13, "Ku membership chi test", None, ku_membership_criterion),
        criterion(14, "property suites", Some(ms(5000)), property_criterion),
    ];
    let mut failed = Vec::new();
    for o in &outcomes {
        let budget = o.budget.map(|b| format!(" (budget {b:?})")).unwrap_or_default();
        println!(
            "[{}] criterion {:>2}: {} ({:?}{}) {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed,
            budget,
            o.note
        );
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
