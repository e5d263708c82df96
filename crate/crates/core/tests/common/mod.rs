//! Shared fixtures: an independent dense-grid integration oracle for
//! centroid defuzzification and a deterministic scenario builder.

#![allow(dead_code)]

use fuzznav::fuzzy::{Engine, MembershipFunction};
use fuzznav::sim::{Scenario, StartPose, WorldSpec};

/// Base grid step for the Riemann oracle (m of output universe).
pub const ORACLE_STEP: f64 = 1e-3;

/// Area and first moment of `min(degree(x), level)` over `[lo, hi]` by
/// dense-grid numeric integration. Independent of the closed-form path: the
/// only shared primitive is pointwise membership evaluation. Cells are split
/// at set breakpoints and at bisection-located clip crossings so the
/// trapezoid rule sees no interior kinks.
pub fn riemann_area_moment(
    mf: &MembershipFunction,
    universe: (f64, f64),
    level: f64,
) -> (f64, f64) {
    let (lo, hi) = universe;
    let clipped = |x: f64| mf.degree(x).min(level);

    // base grid + breakpoints
    let n = ((hi - lo) / ORACLE_STEP).ceil() as usize;
    let mut xs: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    for b in mf.breakpoints() {
        if b > lo && b < hi {
            xs.push(b);
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();

    // split cells where the raw degree crosses the clip level
    let mut cuts = Vec::new();
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (mf.degree(a) - level, mf.degree(b) - level);
        if fa * fb < 0.0 {
            let (mut a, mut b, mut fa) = (a, b, fa);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = mf.degree(m) - level;
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            cuts.push(0.5 * (a + b));
        }
    }
    xs.extend(cuts);
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();

    let mut area = 0.0;
    let mut moment = 0.0;
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ya, yb) = (clipped(a), clipped(b));
        area += 0.5 * (ya + yb) * (b - a);
        // trapezoid for x*y(x) as well
        moment += 0.5 * (a * ya + b * yb) * (b - a);
    }
    (area, moment)
}

/// Dense-grid centroid of the summed per-term clipped sets.
pub fn riemann_centroid(
    var: &fuzznav::fuzzy::LinguisticVariable,
    clipped: &[(&str, f64)],
) -> Option<f64> {
    let mut area = 0.0;
    let mut moment = 0.0;
    for &(label, level) in clipped {
        if level <= 0.0 {
            continue;
        }
        let idx = var.term_index(label)?;
        let (a, m) = riemann_area_moment(&var.terms[idx].1, var.universe, level);
        area += a;
        moment += m;
    }
    (area > 0.0).then(|| moment / area)
}

/// Full Mamdani oracle: fuzzify, min-fire every rule, max-aggregate per
/// consequent term, dense-grid centroid per output.
pub fn riemann_infer(engine: &Engine, crisp: &[f64]) -> Vec<Option<f64>> {
    let inputs = engine.inputs();
    let degrees: Vec<Vec<f64>> = inputs
        .iter()
        .zip(crisp)
        .map(|(v, &x)| v.degrees(x).expect("finite input"))
        .collect();
    let input_idx = |name: &str| inputs.iter().position(|v| v.name == name).unwrap();
    let outputs = engine.outputs();
    let out_idx = |name: &str| outputs.iter().position(|v| v.name == name).unwrap();

    let mut levels: Vec<Vec<f64>> = outputs.iter().map(|v| vec![0.0; v.terms.len()]).collect();
    for rule in &engine.rule_base().rules {
        let mut act: f64 = 1.0;
        for (var, term) in &rule.antecedent {
            let vi = input_idx(var);
            let ti = inputs[vi].term_index(term).unwrap();
            act = act.min(degrees[vi][ti]);
        }
        if act > 0.0 {
            for (var, term) in &rule.consequents {
                let oi = out_idx(var);
                let ti = outputs[oi].term_index(term).unwrap();
                levels[oi][ti] = levels[oi][ti].max(act);
            }
        }
    }
    outputs
        .iter()
        .zip(&levels)
        .map(|(var, lv)| {
            let clipped: Vec<(&str, f64)> = var
                .terms
                .iter()
                .zip(lv)
                .map(|((l, _), &a)| (l.as_str(), a))
                .collect();
            riemann_centroid(var, &clipped)
        })
        .collect()
}

/// A clean 20x20 scenario with no obstacles; tests mutate what they need.
pub fn empty_scenario(goal: [f64; 2]) -> Scenario {
    Scenario {
        schema_version: 1,
        name: None,
        seed: 1,
        duration_s: 60.0,
        dt_s: 0.01,
        control_period_s: 0.01,
        start: StartPose {
            x_m: 0.0,
            y_m: 0.0,
            theta_rad: 0.0,
        },
        goal_m: goal,
        goal_radius_m: 0.2,
        robot: Default::default(),
        world: WorldSpec {
            bounds_m: [[-20.0, -20.0], [20.0, 20.0]],
            obstacles: vec![],
            generate: None,
        },
        sensors: Default::default(),
        controller: Default::default(),
    }
}
