//! Builds the six-input/two-output navigation engine and its layered rule
//! base, and can emit the left/right-mirrored twin used as a symmetry
//! oracle in tests.

use super::spec::*;
use crate::error::NavError;
use crate::fuzzy::{
    Engine, FuzzyError, LinguisticVariable, MembershipFunction as Mf, Rule, RuleBase,
    ValidationReport,
};

/// Grid resolution per input dimension for the construction-time
/// completeness sweep.
pub const VALIDATION_GRID: usize = 5;

/// A validated navigation engine with resolved input/output ordering:
/// inputs are (distance, direction error, front, back, left, right) and
/// outputs (wheel_left, wheel_right).
#[derive(Debug, Clone)]
pub struct NavEngine {
    engine: Engine,
    omega_max: f64,
    inputs: [usize; 6],
    outputs: [usize; 2],
}

impl NavEngine {
    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    /// Raw fuzzy mapping from crisp inputs to wheel-speed setpoints.
    pub fn infer(
        &self,
        distance: f64,
        direction_error: f64,
        ranges: [f64; 4],
    ) -> Result<(f64, f64), FuzzyError> {
        let mut crisp = [0.0; 6];
        crisp[self.inputs[0]] = distance;
        crisp[self.inputs[1]] = direction_error;
        for (i, r) in ranges.iter().enumerate() {
            crisp[self.inputs[2 + i]] = *r;
        }
        let out = self.engine.infer_ordered(&crisp)?;
        Ok((out[self.outputs[0]], out[self.outputs[1]]))
    }

    pub fn validate(&self) -> ValidationReport {
        self.engine.validate_rulebase(VALIDATION_GRID)
    }
}

fn tri(p: [f64; 3]) -> Result<Mf, FuzzyError> {
    Mf::triangle(p[0], p[1], p[2])
}

fn variables(spec: &EngineSpec) -> Result<Vec<LinguisticVariable>, NavError> {
    let d = &spec.target_distance;
    let dist = LinguisticVariable::new(
        VAR_DISTANCE,
        (d.universe_m[0], d.universe_m[1]),
        Some("m"),
        vec![
            (DIST_TERMS[0], tri(d.zero)?),
            (DIST_TERMS[1], tri(d.near)?),
            (DIST_TERMS[2], tri(d.medium)?),
            (DIST_TERMS[3], Mf::right_shoulder(d.far[0], d.far[1])?),
        ],
    )?;

    let e = &spec.direction_error;
    let dir = LinguisticVariable::new(
        VAR_DIRECTION,
        (-std::f64::consts::PI, std::f64::consts::PI),
        Some("rad"),
        vec![
            (
                DIR_TERMS[0],
                Mf::left_shoulder(e.large_negative[0], e.large_negative[1])?,
            ),
            (DIR_TERMS[1], tri(e.small_negative)?),
            (DIR_TERMS[2], tri(e.zero)?),
            (DIR_TERMS[3], tri(e.small_positive)?),
            (
                DIR_TERMS[4],
                Mf::right_shoulder(e.large_positive[0], e.large_positive[1])?,
            ),
        ],
    )?;

    let o = &spec.obstacle;
    let obstacle = |name: &str| -> Result<LinguisticVariable, FuzzyError> {
        LinguisticVariable::new(
            name,
            (o.universe_m[0], o.universe_m[1]),
            Some("m"),
            vec![
                (OBS_TERMS[0], tri(o.very_near)?),
                (OBS_TERMS[1], tri(o.near)?),
                (OBS_TERMS[2], Mf::right_shoulder(o.far[0], o.far[1])?),
            ],
        )
    };

    let w = spec.omega_max_rad_s();
    if !(w > 0.0 && w.is_finite()) {
        return Err(NavError::BadConfig {
            detail: format!("omega_max must be positive, got {w}"),
        });
    }
    // Seven evenly spaced terms over [-w, w]: shoulders at the extremes so
    // the ends are fully attainable, triangles with 50% overlap in between.
    let h = w / 3.0;
    let wheel = |name: &str| -> Result<LinguisticVariable, FuzzyError> {
        let mut terms: Vec<(&str, Mf)> = vec![(WHEEL_TERMS[0], Mf::left_shoulder(-w, -w + h)?)];
        for (k, label) in WHEEL_TERMS.iter().enumerate().take(6).skip(1) {
            let center = -w + k as f64 * h;
            terms.push((label, Mf::triangle(center - h, center, center + h)?));
        }
        terms.push((WHEEL_TERMS[6], Mf::right_shoulder(w - h, w)?));
        LinguisticVariable::new(name, (-w, w), Some("rad/s"), terms)
    };

    Ok(vec![
        dist,
        dir,
        obstacle(VAR_FRONT)?,
        obstacle(VAR_BACK)?,
        obstacle(VAR_LEFT)?,
        obstacle(VAR_RIGHT)?,
        wheel(VAR_WHEEL_LEFT)?,
        wheel(VAR_WHEEL_RIGHT)?,
    ])
}

/// Wheel term by ladder position, clamped to the valid range.
fn wheel_term(idx: i32) -> &'static str {
    WHEEL_TERMS[idx.clamp(0, 6) as usize]
}

fn rule(antecedent: &[(&str, &str)], left: &str, right: &str) -> Rule {
    Rule::new(
        antecedent,
        &[(VAR_WHEEL_LEFT, left), (VAR_WHEEL_RIGHT, right)],
    )
}

/// The layered default rule base, compiled flat:
///
/// 1. stop at the goal;
/// 2. cruise steering by direction error, speed scaled by target distance;
/// 3. the same steering at caution speed when the front range reads Near;
/// 4. a speed governor plus escape turns when the front range reads
///    VeryNear, steering toward the freer side (reversing when boxed in,
///    breaking exact left/right ties toward a right turn);
/// 5. gentle veers away from a wall hugging either side.
///
/// Every rule carries a non-Zero distance clause so that nothing competes
/// with the stop rule at the goal.
pub fn default_rules() -> Vec<Rule> {
    let mut rules = Vec::with_capacity(96);
    let stop = WHEEL_TERMS[3];

    // 1. stop at goal, regardless of everything else
    rules.push(rule(&[(VAR_DISTANCE, DIST_TERMS[0])], stop, stop));

    // steering offsets per direction term: (left wheel, right wheel)
    let steer: [(&str, i32, i32); 5] = [
        ("LN", 0, -2), // goal hard right: slow the right wheel a lot
        ("SN", 0, -1),
        ("Z", 0, 0),
        ("SP", -1, 0),
        ("LP", -2, 0),
    ];

    for (di, dist) in DIST_TERMS.iter().copied().enumerate().skip(1) {
        // 2. cruise (front clear): base speed by distance class
        let base = match di {
            1 => 4, // Near  -> Fwd_S
            2 => 5, // Medium-> Fwd_M
            _ => 6, // Far   -> Fwd_F
        };
        for &(dir, dl, dr) in &steer {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_DIRECTION, dir),
                    (VAR_FRONT, "Far"),
                ],
                wheel_term(base + dl),
                wheel_term(base + dr),
            ));
        }

        // 3. caution (front Near): cap at Fwd_S
        for &(dir, dl, dr) in &steer {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_DIRECTION, dir),
                    (VAR_FRONT, "Near"),
                ],
                wheel_term(4 + dl),
                wheel_term(4 + dr),
            ));
        }

        // 4. front VeryNear: governor pulls speed down...
        let vn = &[(VAR_DISTANCE, dist), (VAR_FRONT, "VeryNear")];
        rules.push(rule(vn, "Back_S", "Back_S"));

        // ...and the escape layer picks a turn from the side ranges.
        let esc = |l: &str, r: &str, lw: &str, rw: &str| {
            rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_FRONT, "VeryNear"),
                    (VAR_LEFT, l),
                    (VAR_RIGHT, r),
                ],
                lw,
                rw,
            )
        };
        // boxed left+right: decide with the back range
        for (back, lw, rw) in [
            ("VeryNear", "Fwd_M", "Back_M"), // boxed all around: pivot right
            ("Near", "Back_S", "Back_S"),
            ("Far", "Back_M", "Back_M"), // back out
        ] {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_FRONT, "VeryNear"),
                    (VAR_LEFT, "VeryNear"),
                    (VAR_RIGHT, "VeryNear"),
                    (VAR_BACK, back),
                ],
                lw,
                rw,
            ));
        }
        rules.push(esc("VeryNear", "Near", "Fwd_S", "Back_M"));
        rules.push(esc("VeryNear", "Far", "Fwd_M", "Back_M"));
        rules.push(esc("Near", "VeryNear", "Back_M", "Fwd_S"));
        rules.push(esc("Far", "VeryNear", "Back_M", "Fwd_M"));
        rules.push(esc("Near", "Near", "Fwd_S", "Back_M")); // tie: turn right
        rules.push(esc("Near", "Far", "Fwd_M", "Back_S"));
        rules.push(esc("Far", "Near", "Back_S", "Fwd_M"));
        // both sides clear: follow the goal if it is clearly to one side,
        // otherwise default to a right turn
        for (dir, lw, rw) in [
            ("LN", "Fwd_M", "Back_M"),
            ("SN", "Fwd_M", "Back_S"),
            ("Z", "Fwd_M", "Back_M"),
            ("SP", "Back_S", "Fwd_M"),
            ("LP", "Back_M", "Fwd_M"),
        ] {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_FRONT, "VeryNear"),
                    (VAR_LEFT, "Far"),
                    (VAR_RIGHT, "Far"),
                    (VAR_DIRECTION, dir),
                ],
                lw,
                rw,
            ));
        }

        // 5. wall veer: side reads VeryNear while the front is not blocked.
        // Strong enough to win the blend against goal steering that points
        // into the wall.
        for (front, lw, rw) in [("Far", "Fwd_M", "Stop"), ("Near", "Fwd_S", "Back_S")] {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_FRONT, front),
                    (VAR_LEFT, "VeryNear"),
                ],
                lw,
                rw,
            ));
        }
        for (front, lw, rw) in [("Far", "Stop", "Fwd_M"), ("Near", "Back_S", "Fwd_S")] {
            rules.push(rule(
                &[
                    (VAR_DISTANCE, dist),
                    (VAR_FRONT, front),
                    (VAR_RIGHT, "VeryNear"),
                ],
                lw,
                rw,
            ));
        }
    }
    rules
}

/// Builds the engine from a spec and runs the completeness/conflict sweep;
/// a failed sweep aborts construction.
pub fn build_navigation_engine(spec: &EngineSpec) -> Result<NavEngine, NavError> {
    let vars = variables(spec)?;
    let rules = spec.rules.clone().unwrap_or_else(default_rules);
    let engine = Engine::new(vars, RuleBase::new(rules))?;

    let resolve_in = |name: &str| engine.input_index(name).expect("input built above");
    let resolve_out = |name: &str| engine.output_index(name).expect("output built above");
    let nav = NavEngine {
        inputs: [
            resolve_in(VAR_DISTANCE),
            resolve_in(VAR_DIRECTION),
            resolve_in(VAR_FRONT),
            resolve_in(VAR_BACK),
            resolve_in(VAR_LEFT),
            resolve_in(VAR_RIGHT),
        ],
        outputs: [resolve_out(VAR_WHEEL_LEFT), resolve_out(VAR_WHEEL_RIGHT)],
        omega_max: spec.omega_max_rad_s(),
        engine,
    };

    let report = nav.validate();
    if !report.ok() {
        return Err(NavError::EngineInvalid {
            gaps: report.gaps.len(),
            conflicts: report.conflicts.len(),
        });
    }
    Ok(nav)
}

/// The left/right mirror image of a spec: direction-error sets reflected
/// about zero and rules rewritten with left/right obstacles, LN/LP, SN/SP,
/// and the two wheels swapped. For a physically consistent rule base,
/// running the mirrored engine on mirrored inputs must reproduce the
/// original commands with the wheels swapped.
pub fn mirrored_spec(spec: &EngineSpec) -> EngineSpec {
    let reflect3 = |p: [f64; 3]| [-p[2], -p[1], -p[0]];
    let mut m = spec.clone();
    m.direction_error = DirectionTerms {
        // left_shoulder(a,b) reflects to right_shoulder(-b,-a)
        large_negative: [
            -spec.direction_error.large_positive[1],
            -spec.direction_error.large_positive[0],
        ],
        small_negative: reflect3(spec.direction_error.small_positive),
        zero: reflect3(spec.direction_error.zero),
        small_positive: reflect3(spec.direction_error.small_negative),
        large_positive: [
            -spec.direction_error.large_negative[1],
            -spec.direction_error.large_negative[0],
        ],
    };
    let rules = spec.rules.clone().unwrap_or_else(default_rules);
    m.rules = Some(rules.iter().map(mirror_rule).collect());
    m
}

fn mirror_rule(rule: &Rule) -> Rule {
    let swap_var = |v: &str| -> String {
        match v {
            VAR_LEFT => VAR_RIGHT.into(),
            VAR_RIGHT => VAR_LEFT.into(),
            VAR_WHEEL_LEFT => VAR_WHEEL_RIGHT.into(),
            VAR_WHEEL_RIGHT => VAR_WHEEL_LEFT.into(),
            other => other.into(),
        }
    };
    let swap_dir_term = |t: &str| -> String {
        match t {
            "LN" => "LP".into(),
            "LP" => "LN".into(),
            "SN" => "SP".into(),
            "SP" => "SN".into(),
            other => other.into(),
        }
    };
    Rule {
        antecedent: rule
            .antecedent
            .iter()
            .map(|(v, t)| {
                if v == VAR_DIRECTION {
                    (v.clone(), swap_dir_term(t))
                } else {
                    (swap_var(v), t.clone())
                }
            })
            .collect(),
        consequents: rule
            .consequents
            .iter()
            .map(|(v, t)| (swap_var(v), t.clone()))
            .collect(),
    }
}
