//! Closed-form centroid and full inference against the independent
//! dense-grid integration oracle, plus the algebraic engine invariants.

mod common;

use common::{riemann_centroid, riemann_infer};
use fuzznav::fuzzy::{
    defuzzify_centroid, Engine, LinguisticVariable, MembershipFunction as Mf, Rule, RuleBase,
};
use fuzznav::nav::{build_navigation_engine, EngineSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bare_var(universe: (f64, f64), terms: Vec<(String, Mf)>) -> LinguisticVariable {
    LinguisticVariable {
        name: "out".into(),
        universe,
        unit: None,
        terms,
    }
}

#[test]
fn spec_pair_matches_oracle() {
    let var = bare_var(
        (0.0, 7.0),
        vec![
            ("a".into(), Mf::triangle(0.0, 2.0, 4.0).unwrap()),
            ("b".into(), Mf::triangle(3.0, 5.0, 7.0).unwrap()),
        ],
    );
    let clipped = [("a", 0.5), ("b", 1.0)];
    let closed = defuzzify_centroid(&var, &clipped).unwrap();
    let oracle = riemann_centroid(&var, &clipped).unwrap();
    assert!(
        (closed - oracle).abs() <= 1e-6,
        "closed {closed} vs oracle {oracle}"
    );
}

/// Random membership function inside [lo, hi].
fn random_mf(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Mf {
    let mut pts: Vec<f64> = (0..4).map(|_| rng.gen_range(lo..hi)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    match rng.gen_range(0..4) {
        0 => Mf::triangle(pts[0], pts[1], pts[2]).unwrap(),
        1 => Mf::trapezoid(pts[0], pts[1], pts[2], pts[3]).unwrap(),
        2 => Mf::left_shoulder(pts[0], (pts[1].max(pts[0] + 1e-6)).min(hi)).unwrap(),
        _ => Mf::right_shoulder(pts[0], (pts[1].max(pts[0] + 1e-6)).min(hi)).unwrap(),
    }
}

#[test]
fn thousand_random_clip_configurations_match_oracle() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut worst = 0.0f64;
    for case in 0..1000 {
        let lo = rng.gen_range(-20.0..0.0);
        let hi = lo + rng.gen_range(5.0..40.0);
        let n_terms = rng.gen_range(1..=5);
        let terms: Vec<(String, Mf)> = (0..n_terms)
            .map(|i| (format!("t{i}"), random_mf(&mut rng, lo, hi)))
            .collect();
        let var = bare_var((lo, hi), terms);
        let clipped: Vec<(String, f64)> = var
            .terms
            .iter()
            .map(|(l, _)| (l.clone(), rng.gen_range(0.05..1.0f64)))
            .collect();
        let clipped_ref: Vec<(&str, f64)> = clipped.iter().map(|(l, a)| (l.as_str(), *a)).collect();
        let closed = defuzzify_centroid(&var, &clipped_ref).unwrap();
        let oracle = riemann_centroid(&var, &clipped_ref).unwrap();
        let err = (closed - oracle).abs();
        worst = worst.max(err);
        assert!(err <= 1e-6, "case {case}: closed {closed} oracle {oracle}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "oracle sweep too slow: {elapsed:?}"
    );
    println!("1000 random clip configs, worst |closed - oracle| = {worst:.2e}");
}

#[test]
fn navigation_engine_infer_matches_oracle_on_random_inputs() {
    let nav = build_navigation_engine(&EngineSpec::default()).unwrap();
    let engine = nav.engine();
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for case in 0..1000 {
        let crisp: Vec<f64> = engine
            .inputs()
            .iter()
            .map(|v| rng.gen_range(v.universe.0..=v.universe.1))
            .collect();
        let ours = engine.infer_ordered(&crisp).unwrap();
        let oracle = riemann_infer(engine, &crisp);
        for (o, r) in ours.iter().zip(&oracle) {
            let r = r.expect("complete base always fires");
            assert!(
                (o - r).abs() <= 1e-6,
                "case {case}: engine {o} vs oracle {r} at {crisp:?}"
            );
        }
    }
}

#[test]
fn infer_is_bit_identical_across_calls() {
    let nav = build_navigation_engine(&EngineSpec::default()).unwrap();
    let engine = nav.engine();
    let crisp = [12.5, -0.7, 1.3, 4.0, 0.5, 2.8];
    let first = engine.infer_ordered(&crisp).unwrap();
    for _ in 0..50 {
        let again = engine.infer_ordered(&crisp).unwrap();
        assert!(first
            .iter()
            .zip(&again)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}

/// Output universes scale: multiplying all output breakpoints by k > 0
/// multiplies the crisp result by exactly k.
#[test]
fn centroid_is_scale_equivariant() {
    let build = |k: f64| -> Engine {
        let x = LinguisticVariable::new(
            "x",
            (0.0, 1.0),
            None,
            vec![
                ("lo", Mf::triangle(0.0, 0.0, 1.0).unwrap()),
                ("hi", Mf::triangle(0.0, 1.0, 1.0).unwrap()),
            ],
        )
        .unwrap();
        let y = LinguisticVariable::new(
            "y",
            (-2.0 * k, 3.0 * k),
            None,
            vec![
                ("a", Mf::triangle(-2.0 * k, -2.0 * k, 0.5 * k).unwrap()),
                ("b", Mf::trapezoid(-0.5 * k, 0.5 * k, 3.0 * k, 3.0 * k).unwrap()),
            ],
        )
        .unwrap();
        let rules = RuleBase::new(vec![
            Rule::new(&[("x", "lo")], &[("y", "a")]),
            Rule::new(&[("x", "hi")], &[("y", "b")]),
        ]);
        Engine::new(vec![x, y], rules).unwrap()
    };
    let base = build(1.0);
    for &k in &[0.25, 2.0, 13.5, 1e3] {
        let scaled = build(k);
        for &x in &[0.0, 0.2, 0.55, 0.9, 1.0] {
            let a = base.infer_ordered(&[x]).unwrap()[0];
            let b = scaled.infer_ordered(&[x]).unwrap()[0];
            assert!(
                (b - k * a).abs() <= 1e-9 * k.max(1.0),
                "k={k} x={x}: {b} vs {}",
                k * a
            );
        }
    }
}

proptest! {
    #[test]
    fn membership_degree_always_in_unit_interval(
        raw in prop::collection::vec(-50.0f64..50.0, 4),
        x in -100.0f64..100.0,
        kind in 0usize..4,
    ) {
        let mut pts = raw.clone();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mf = match kind {
            0 => Mf::triangle(pts[0], pts[1], pts[2]).unwrap(),
            1 => Mf::trapezoid(pts[0], pts[1], pts[2], pts[3]).unwrap(),
            2 => Mf::left_shoulder(pts[0], pts[1].max(pts[0] + 1e-9)).unwrap(),
            _ => Mf::right_shoulder(pts[0], pts[1].max(pts[0] + 1e-9)).unwrap(),
        };
        let d = mf.degree(x);
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn nav_inputs_always_cover(x in 0.0f64..1.0) {
        // every input variable of the default engine has positive max degree
        // across its whole universe
        let nav = build_navigation_engine(&EngineSpec::default()).unwrap();
        for var in nav.engine().inputs() {
            let (lo, hi) = var.universe;
            let v = lo + x * (hi - lo);
            let degrees = var.degrees(v).unwrap();
            prop_assert!(degrees.iter().any(|&d| d > 0.0), "{} uncovered at {v}", var.name);
        }
    }

    #[test]
    fn centroid_stays_inside_fired_hull(
        a1 in 0.05f64..1.0,
        a2 in 0.0f64..1.0,
    ) {
        let var = bare_var(
            (0.0, 7.0),
            vec![
                ("a".into(), Mf::triangle(0.0, 2.0, 4.0).unwrap()),
                ("b".into(), Mf::triangle(3.0, 5.0, 7.0).unwrap()),
            ],
        );
        let c = defuzzify_centroid(&var, &[("a", a1), ("b", a2)]).unwrap();
        let hi = if a2 > 0.0 { 7.0 } else { 4.0 };
        prop_assert!(c >= 0.0 && c <= hi);
    }
}
