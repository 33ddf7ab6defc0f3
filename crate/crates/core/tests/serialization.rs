use kuwalls_core::rational::{q, Rat};
use kuwalls_core::tilt::Slope;
use kuwalls_core::walls::{numerical_wall, DenominatorLattice, SearchConfig};
use kuwalls_core::{catalog, ChernVector, FanoContext};
use serde_json::{json, Value};

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn rationals_are_strings() {
    assert_eq!(serde_json::to_value(Rat(q(-3, 6))).unwrap(), json!("-1/2"));
    assert_eq!(serde_json::to_value(Rat(q(4, 2))).unwrap(), json!("2"));
    let back: Rat = serde_json::from_str("\"6/-4\"").unwrap();
    assert_eq!(back.0, q(-3, 2));
    assert!(serde_json::from_str::<Rat>("0.5").is_err());
}

#[test]
fn chern_vectors_round_trip() {
    let ctx = FanoContext::new(3).unwrap();
    for e in catalog::catalog(3).unwrap() {
        let s = serde_json::to_string(&e.chern).unwrap();
        let back: ChernVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e.chern, "{}", e.name);
    }
    assert_eq!(
        serde_json::to_value(ctx.w()).unwrap(),
        json!({"r": "0", "c1": "1", "c2": "-1/2", "c3": "-1/6"})
    );
}

#[test]
fn tagged_walls_and_infinite_slopes() {
    let ctx = FanoContext::new(2).unwrap();
    let wall = numerical_wall(&ctx.w(), &ChernVector::unit()).unwrap();
    assert_eq!(
        serde_json::to_value(wall).unwrap(),
        json!({"kind": "semicircle", "center_beta": "-1/2", "radius_sq": "1/4"})
    );
    assert_eq!(serde_json::to_value(Slope::PlusInfinity).unwrap(), json!("+inf"));
    assert_eq!(serde_json::to_value(Slope::Finite(q(1, 3))).unwrap(), json!("1/3"));
}

#[test]
fn reports_contain_no_floats() {
    let ctx = FanoContext::new(2).unwrap();
    let cfg = SearchConfig::new(q(-1, 2), DenominatorLattice::half_eighth(), 5);
    let report = kuwalls_core::walls::chamber_report(&ctx, &ctx.w(), &cfg).unwrap();
    assert!(!has_float(&serde_json::to_value(&report).unwrap()));
    let checks = kuwalls_core::checks::run(&[2]).unwrap();
    assert!(!has_float(&serde_json::to_value(&checks).unwrap()));
}
