//! Controller-level properties: grid completeness, stop-at-goal, bounded
//! commands, mirror symmetry against the mirrored-engine oracle, obstacle
//! dominance, planner clearance audits, and the closed-loop speed tracker.

use fuzznav::geom::Vec2;
use fuzznav::model::{motor_step, MotorParams, MotorState};
use fuzznav::nav::{
    build_navigation_engine, mirrored_spec, plan_path, speed_to_voltage, tracking_error,
    EngineSpec, NavEngine, WheelCommand,
};
use fuzznav::sensors::Obstacle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn default_engine() -> NavEngine {
    build_navigation_engine(&EngineSpec::default()).unwrap()
}

/// 5 evenly spaced samples across an input universe.
fn axis(engine: &NavEngine, name: &str) -> Vec<f64> {
    let var = engine
        .engine()
        .inputs()
        .iter()
        .find(|v| v.name == name)
        .unwrap();
    let (lo, hi) = var.universe;
    (0..5).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

fn full_grid(engine: &NavEngine) -> Vec<[f64; 6]> {
    let d = axis(engine, "target_distance");
    let e = axis(engine, "direction_error");
    let o = axis(engine, "obstacle_front");
    let mut out = Vec::with_capacity(5usize.pow(6));
    for &dv in &d {
        for &ev in &e {
            for &fv in &o {
                for &bv in &o {
                    for &lv in &o {
                        for &rv in &o {
                            out.push([dv, ev, fv, bv, lv, rv]);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn grid_commands_finite_and_bounded_without_fallback() {
    let engine = default_engine();
    let w = engine.omega_max();
    for point in full_grid(&engine) {
        let (l, r) = engine
            .infer(point[0], point[1], [point[2], point[3], point[4], point[5]])
            .unwrap_or_else(|e| panic!("fallback at {point:?}: {e}"));
        assert!(l.is_finite() && r.is_finite());
        assert!(l.abs() <= w + 1e-9 && r.abs() <= w + 1e-9, "unbounded at {point:?}");
    }
}

#[test]
fn stop_at_goal_for_every_obstacle_state() {
    let engine = default_engine();
    let w = engine.omega_max();
    let o = axis(&engine, "obstacle_front");
    let e = axis(&engine, "direction_error");
    for &ev in &e {
        for &fv in &o {
            for &bv in &o {
                for &lv in &o {
                    for &rv in &o {
                        let (l, r) = engine.infer(0.0, ev, [fv, bv, lv, rv]).unwrap();
                        assert!(
                            l.abs() <= 0.02 * w && r.abs() <= 0.02 * w,
                            "moving at the goal: ({l}, {r}) for e={ev} obs=({fv},{bv},{lv},{rv})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn mirror_symmetry_against_mirrored_engine_oracle() {
    let spec = EngineSpec::default();
    let engine = build_navigation_engine(&spec).unwrap();
    let mirror = build_navigation_engine(&mirrored_spec(&spec)).unwrap();
    for point in full_grid(&engine) {
        let [d, e, f, b, l, r] = point;
        let (wl, wr) = engine.infer(d, e, [f, b, l, r]).unwrap();
        let (ml, mr) = mirror.infer(d, -e, [f, b, r, l]).unwrap();
        assert!(
            (wl - mr).abs() < 1e-9 && (wr - ml).abs() < 1e-9,
            "mirror broke at {point:?}: ({wl},{wr}) vs swapped ({mr},{ml})"
        );
    }
}

#[test]
fn blocked_front_strictly_slows_forward_speed() {
    let engine = default_engine();
    let d = axis(&engine, "target_distance");
    let e = axis(&engine, "direction_error");
    let o = axis(&engine, "obstacle_front");
    let front_near_peak = 0.0; // VeryNear peak
    let front_far_peak = 4.0; // Far plateau
    for &dv in &d {
        for &ev in &e {
            for &bv in &o {
                for &lv in &o {
                    for &rv in &o {
                        let (l0, r0) = engine
                            .infer(dv, ev, [front_near_peak, bv, lv, rv])
                            .unwrap();
                        let (l1, r1) = engine
                            .infer(dv, ev, [front_far_peak, bv, lv, rv])
                            .unwrap();
                        let blocked = 0.5 * (l0 + r0);
                        let clear = 0.5 * (l1 + r1);
                        if dv == 0.0 {
                            // stop rules flatten both cases at the goal
                            assert!(blocked <= clear + 1e-9);
                        } else {
                            assert!(
                                blocked < clear,
                                "no dominance at d={dv} e={ev} obs=({bv},{lv},{rv}): {blocked} vs {clear}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn planner_keeps_clearance_in_random_worlds() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let footprint = 0.25;
    let clearance = 0.3;
    let inflation = footprint + clearance;
    let start = Vec2::new(-8.0, -8.0);
    let goal = Vec2::new(8.0, 8.0);
    let mut audited = 0;
    for _ in 0..150 {
        let world: Vec<Obstacle> = (0..8)
            .map(|i| {
                let radius = rng.gen_range(0.3..0.8);
                loop {
                    let c = Vec2::new(rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0));
                    if c.distance(start) > radius + 1.5 && c.distance(goal) > radius + 1.5 {
                        return Obstacle::fixed(i, c, radius);
                    }
                }
            })
            .collect();
        let path = match plan_path(start, goal, &world, inflation, 0.0, 1.3) {
            Ok(p) => p,
            Err(_) => continue,
        };
        audited += 1;
        // audit vertices and chord midpoints against every obstacle surface
        let mut points: Vec<Vec2> = path.waypoints.clone();
        points.extend(
            path.waypoints
                .windows(2)
                .map(|w| (w[0] + w[1]) * 0.5)
                .collect::<Vec<_>>(),
        );
        for p in &points {
            for o in &world {
                let surface = p.distance(o.center) - o.radius;
                assert!(
                    surface >= inflation - 1e-6,
                    "clearance {surface} < {inflation} at {p:?}"
                );
            }
        }
    }
    assert!(audited > 100, "too few plannable worlds: {audited}");
}

#[test]
fn tracking_error_matches_independent_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..50 {
        let n = rng.gen_range(2..12);
        let waypoints: Vec<Vec2> = (0..n)
            .map(|_| Vec2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let path = fuzznav::nav::PlannedPath {
            timestamps: vec![0.0; waypoints.len()],
            waypoints,
            created_at: 0.0,
        };
        let actual: Vec<Vec2> = (0..30)
            .map(|_| Vec2::new(rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0)))
            .collect();
        let ours = tracking_error(&path, &actual);
        for (p, e) in actual.iter().zip(&ours) {
            // nested-scan reference with explicit projection math
            let mut best = f64::INFINITY;
            for w in path.waypoints.windows(2) {
                let (a, b) = (w[0], w[1]);
                let ab = b - a;
                let denom = ab.norm_sq();
                let t = if denom == 0.0 {
                    0.0
                } else {
                    ((*p - a).dot(ab) / denom).clamp(0.0, 1.0)
                };
                best = best.min(p.distance(a + ab * t));
            }
            assert!((best - e).abs() < 1e-12);
        }
    }
}

#[test]
fn closed_loop_reaches_98_percent_within_deadline() {
    let motor = MotorParams::default();
    let engine = default_engine();
    let w_max = engine.omega_max();
    let dt = 0.01;
    for set in [0.2 * w_max, 0.6 * w_max, w_max, -w_max, -0.4 * w_max] {
        let cmd = WheelCommand {
            omega_left: set,
            omega_right: set,
        };
        let mut left = MotorState::default();
        let mut right = MotorState::default();
        let mut reached_at = None;
        for step in 0..(3.0 / dt) as usize {
            let (vl, vr) = speed_to_voltage(&cmd, &left, &right, &motor, 2.0, 24.0);
            left = motor_step(&left, vl, &motor, dt).unwrap();
            right = motor_step(&right, vr, &motor, dt).unwrap();
            if reached_at.is_none() && (left.omega - set).abs() <= 0.02 * set.abs() {
                reached_at = Some(step as f64 * dt);
            }
        }
        let t = reached_at.unwrap_or(f64::INFINITY);
        assert!(t <= 1.5, "setpoint {set}: reached 98% at t={t}");
    }
}
