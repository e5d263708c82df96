use serde::{Deserialize, Serialize};

use super::builder::NavEngine;
use super::geometry::{target_geometry, NavInputs};
use super::planner::{plan_path, PlannedPath};
use crate::error::NavError;
use crate::geom::Vec2;
use crate::model::{MotorParams, MotorState, Pose};
use crate::sensors::{fuse_location, Obstacle, SensorFrame};

/// Per-wheel speed setpoints (rad/s), bounded by the engine's ω_max.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WheelCommand {
    pub omega_left: f64,
    pub omega_right: f64,
}

impl WheelCommand {
    pub const STOP: Self = Self {
        omega_left: 0.0,
        omega_right: 0.0,
    };

    pub fn forward_speed(&self) -> f64 {
        0.5 * (self.omega_left + self.omega_right)
    }
}

/// Tuning knobs that live in the scenario document, not the engine spec.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct ControllerConfig {
    /// Driver ceiling (V).
    pub v_max_volts: f64,
    /// Proportional speed-tracking gain on top of the steady-state
    /// feedforward (V·s/rad).
    pub kp_speed: f64,
    /// Extra margin beyond the robot footprint when inflating obstacles (m).
    pub clearance_m: f64,
    /// GPS/odometry blend weight (overrides the sensor config when set).
    pub fusion_alpha: f64,
    /// Replan checks run at most this often (Hz).
    pub replan_rate_hz: f64,
    /// Replan when an obstacle intrudes within this distance of the
    /// remaining path corridor (m).
    pub corridor_m: f64,
    /// Steer at the first waypoint at least this far ahead (m).
    pub lookahead_m: f64,
    /// Waypoints closer than this are considered passed (m).
    pub capture_m: f64,
    /// Moving obstacles are planned against as swept discs covering this
    /// much of their future motion (s); the four fixed rays cannot see a
    /// diagonal approach, so dodging them is the planner's job.
    pub moving_lookahead_s: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            v_max_volts: 24.0,
            kp_speed: 2.0,
            clearance_m: 0.45,
            fusion_alpha: 0.08,
            replan_rate_hz: 2.0,
            corridor_m: 0.5,
            lookahead_m: 0.8,
            capture_m: 0.4,
            moving_lookahead_s: 3.0,
        }
    }
}

/// Steady-state inversion of the motor model plus a proportional correction,
/// clamped to the driver ceiling: `V = (R·b/Kt + Ke)·ω_set + kp·(ω_set − ω)`.
pub fn speed_to_voltage(
    cmd: &WheelCommand,
    left: &MotorState,
    right: &MotorState,
    motor: &MotorParams,
    kp: f64,
    v_max: f64,
) -> (f64, f64) {
    let one = |set: f64, actual: f64| -> f64 {
        (motor.holding_voltage(set) + kp * (set - actual)).clamp(-v_max, v_max)
    };
    (
        one(cmd.omega_left, left.omega),
        one(cmd.omega_right, right.omega),
    )
}

/// The full navigation controller for one robot: a fuzzy engine, a waypoint
/// plan with corridor-triggered replanning, and the location fusion front
/// end.
#[derive(Debug, Clone)]
pub struct Navigator {
    engine: NavEngine,
    config: ControllerConfig,
    footprint_radius: f64,
    goal: Vec2,
    plan: PlannedPath,
    cursor: usize,
    last_replan_check: f64,
    /// Times at which the active plan actually changed.
    pub replan_times: Vec<f64>,
    /// Number of control steps that fell back to a safe stop.
    pub safe_stops: u64,
    /// Set when the corridor is intruded but no valid replan exists (goal
    /// transiently covered by a mover); the robot holds until it clears.
    holding: bool,
    /// Set while the robot sits inside a mover's swept disc: steer here,
    /// sideways off the mover's track, instead of at the plan. Latched to
    /// `(obstacle id, target)` until the threat clears so the perpendicular
    /// cannot chatter as the robot crosses the track line.
    escape: Option<(u32, Vec2)>,
}

impl Navigator {
    /// Plans the initial path; fails if the goal is unreachable.
    pub fn new(
        engine: NavEngine,
        config: ControllerConfig,
        footprint_radius: f64,
        start: Vec2,
        goal: Vec2,
        world: &[Obstacle],
        now: f64,
    ) -> Result<Self, NavError> {
        let nominal = engine.omega_max() * 0.07; // rough cruise m/s for ETAs
        let plan = if start.distance(goal) < 1e-9 {
            PlannedPath {
                waypoints: vec![start],
                timestamps: vec![now],
                created_at: now,
            }
        } else {
            plan_path(
                start,
                goal,
                world,
                footprint_radius + config.clearance_m,
                now,
                nominal,
            )?
        };
        Ok(Self {
            engine,
            config,
            footprint_radius,
            goal,
            plan,
            cursor: 0,
            last_replan_check: f64::NEG_INFINITY,
            replan_times: Vec::new(),
            safe_stops: 0,
            holding: false,
            escape: None,
        })
    }

    pub fn engine(&self) -> &NavEngine {
        &self.engine
    }

    pub fn plan(&self) -> &PlannedPath {
        &self.plan
    }

    pub fn goal(&self) -> Vec2 {
        self.goal
    }

    /// Rate-limited corridor check; replans from `position` when an obstacle
    /// intrudes on the remaining path. Moving obstacles are checked and
    /// planned against as swept discs covering their next few seconds. A
    /// failed replan (goal transiently covered by a moving obstacle) keeps
    /// the old plan. Returns whether the plan changed.
    pub fn maybe_replan(&mut self, position: Vec2, world: &[Obstacle], now: f64) -> bool {
        let swept = self.swept_world(world);

        // A mover bearing down on the robot outranks everything and is not
        // rate-limited: the rays cannot see diagonals, so step sideways off
        // its track the moment its sweep covers us.
        self.update_escape(position, world, &swept);
        if self.escape.is_some() {
            self.holding = false;
            return false;
        }

        if now - self.last_replan_check < 1.0 / self.config.replan_rate_hz {
            return false;
        }
        self.last_replan_check = now;

        if !self.corridor_intruded(position, &swept) {
            self.holding = false;
            return false;
        }
        let inflation = self.footprint_radius + self.config.clearance_m;
        let nominal = self.engine.omega_max() * 0.07;
        match plan_path(position, self.goal, &swept, inflation, now, nominal) {
            Ok(p) => {
                self.plan = p;
                self.cursor = 0;
                self.holding = false;
                self.replan_times.push(now);
                true
            }
            Err(_) => {
                self.holding = true;
                false
            }
        }
    }

    /// Latches a sideways escape point (perpendicular offset from the
    /// mover's track line) while `position` is inside a mover's swept disc,
    /// with hysteresis on release.
    fn update_escape(&mut self, position: Vec2, world: &[Obstacle], swept: &[Obstacle]) {
        let trigger = self.footprint_radius + 0.25;
        let release = trigger + 0.15;
        let inside = |margin: f64, id: Option<u32>| -> Option<&Obstacle> {
            world
                .iter()
                .zip(swept)
                .filter(|(o, s)| {
                    o.is_moving()
                        && id.map_or(true, |want| o.id == want)
                        && position.distance(s.center) < s.radius + margin
                })
                .min_by(|a, b| {
                    let da = position.distance(a.0.center);
                    let db = position.distance(b.0.center);
                    da.partial_cmp(&db).unwrap()
                })
                .map(|(o, _)| o)
        };
        if let Some((id, _)) = self.escape {
            // keep the latched target while the same mover still threatens
            if inside(release, Some(id)).is_some() {
                return;
            }
            self.escape = None;
        }
        if let Some(threat) = inside(trigger, None) {
            let along = threat.velocity.normalized();
            let foot = threat.center + along * (position - threat.center).dot(along);
            let off = position - foot;
            let dir = if off.norm() < 1e-6 {
                along.perp()
            } else {
                off.normalized()
            };
            self.escape = Some((threat.id, position + dir * 2.5));
        }
    }

    /// Moving obstacles replaced by a disc enclosing their sweep over the
    /// next `moving_lookahead_s` seconds.
    fn swept_world(&self, world: &[Obstacle]) -> Vec<Obstacle> {
        let tau = self.config.moving_lookahead_s;
        world
            .iter()
            .map(|o| {
                if o.is_moving() {
                    let half = o.velocity * (0.5 * tau);
                    Obstacle {
                        center: o.center + half,
                        radius: o.radius + half.norm(),
                        ..*o
                    }
                } else {
                    *o
                }
            })
            .collect()
    }

    fn corridor_intruded(&self, position: Vec2, world: &[Obstacle]) -> bool {
        let corridor = self.config.corridor_m + self.footprint_radius;
        let from = self.cursor.min(self.plan.waypoints.len().saturating_sub(1));
        let mut polyline = vec![position];
        polyline.extend_from_slice(&self.plan.waypoints[from..]);
        world.iter().any(|o| {
            polyline.windows(2).any(|w| {
                crate::geom::point_segment_distance(o.center, w[0], w[1]) < o.radius + corridor
            })
        })
    }

    /// The waypoint to steer at: advance past captured waypoints, then walk
    /// the polyline until `lookahead_m` of path length has accumulated.
    /// Path distance, not straight-line distance: a Euclidean pick could
    /// jump across the disc a U-shaped detour is wrapping.
    fn steering_target(&mut self, position: Vec2) -> Vec2 {
        let n = self.plan.waypoints.len();
        while self.cursor + 1 < n
            && position.distance(self.plan.waypoints[self.cursor]) < self.config.capture_m
        {
            self.cursor += 1;
        }
        let mut i = self.cursor;
        let mut acc = position.distance(self.plan.waypoints[i]);
        while acc < self.config.lookahead_m && i + 1 < n {
            acc += self.plan.waypoints[i].distance(self.plan.waypoints[i + 1]);
            i += 1;
        }
        self.plan.waypoints[i]
    }

    /// Builds the crisp inputs for one frame: fused location, bearing to the
    /// active waypoint, distance to the final goal.
    pub fn inputs_for(&mut self, frame: &SensorFrame, odo_pose: &Pose) -> NavInputs {
        let fused = fuse_location(frame.gps, odo_pose.position(), self.config.fusion_alpha);
        // While evading a mover, the escape point IS the target: its
        // distance keeps the stop rules from pinning the robot in its path.
        let (target, distance_ref) = match self.escape {
            Some((_, p)) => (p, p),
            None => (self.steering_target(fused), self.goal),
        };
        let (goal_distance, _) = target_geometry(fused, frame.heading, distance_ref);
        let (_, direction_error) = target_geometry(fused, frame.heading, target);
        NavInputs {
            target_distance: goal_distance,
            direction_error,
            obstacle_front: frame.front,
            obstacle_back: frame.back,
            obstacle_left: frame.left,
            obstacle_right: frame.right,
        }
    }

    /// One control step: fuse location, compute target geometry, run the
    /// fuzzy engine, clamp. Falls back to a safe stop if inference fails
    /// (a complete rule base never does).
    pub fn control_step(&mut self, frame: &SensorFrame, odo_pose: &Pose) -> WheelCommand {
        if self.holding {
            return WheelCommand::STOP;
        }
        let inputs = self.inputs_for(frame, odo_pose);
        self.command_for(&inputs)
    }

    /// The pure fuzzy mapping with the safe-stop fallback and clamping.
    pub fn command_for(&mut self, inputs: &NavInputs) -> WheelCommand {
        match self
            .engine
            .infer(inputs.target_distance, inputs.direction_error, inputs.ranges())
        {
            Ok((l, r)) => {
                let w = self.engine.omega_max();
                WheelCommand {
                    omega_left: l.clamp(-w, w),
                    omega_right: r.clamp(-w, w),
                }
            }
            Err(_) => {
                self.safe_stops += 1;
                WheelCommand::STOP
            }
        }
    }

    pub fn fused_position(&self, frame: &SensorFrame, odo_pose: &Pose) -> Vec2 {
        fuse_location(frame.gps, odo_pose.position(), self.config.fusion_alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nav::builder::build_navigation_engine;
    use crate::nav::spec::EngineSpec;

    fn nav(world: &[Obstacle], goal: Vec2) -> Navigator {
        let engine = build_navigation_engine(&EngineSpec::default()).unwrap();
        Navigator::new(
            engine,
            ControllerConfig::default(),
            0.25,
            Vec2::ZERO,
            goal,
            world,
            0.0,
        )
        .unwrap()
    }

    fn frame(ranges: [f64; 4], gps: Vec2, heading: f64) -> SensorFrame {
        SensorFrame {
            front: ranges[0],
            back: ranges[1],
            left: ranges[2],
            right: ranges[3],
            gps,
            heading,
            timestamp: 0.0,
        }
    }

    #[test]
    fn at_goal_commands_are_tiny() {
        let mut n = nav(&[], Vec2::new(5.0, 0.0));
        let odo = Pose::new(5.0, 0.0, 0.3);
        let f = frame([4.0; 4], Vec2::new(5.0, 0.0), 0.3);
        let cmd = n.control_step(&f, &odo);
        let w = n.engine().omega_max();
        assert!(cmd.omega_left.abs() <= 0.02 * w);
        assert!(cmd.omega_right.abs() <= 0.02 * w);
    }

    #[test]
    fn clear_run_drives_forward() {
        let mut n = nav(&[], Vec2::new(20.0, 0.0));
        let odo = Pose::new(0.0, 0.0, 0.0);
        let f = frame([4.0; 4], Vec2::ZERO, 0.0);
        let cmd = n.control_step(&f, &odo);
        assert!(cmd.forward_speed() > 0.5 * n.engine().omega_max());
    }

    #[test]
    fn speed_to_voltage_zero_at_rest() {
        let motor = MotorParams::default();
        let (vl, vr) = speed_to_voltage(
            &WheelCommand::STOP,
            &MotorState::default(),
            &MotorState::default(),
            &motor,
            2.0,
            24.0,
        );
        assert_eq!((vl, vr), (0.0, 0.0));
    }

    #[test]
    fn holding_voltage_matches_steady_state() {
        let motor = MotorParams::default();
        let w = motor.steady_state_speed(12.0);
        let cmd = WheelCommand {
            omega_left: w,
            omega_right: w,
        };
        let state = MotorState::new(w, motor.damping / motor.kt * w);
        let (vl, vr) = speed_to_voltage(&cmd, &state, &state, &motor, 2.0, 24.0);
        assert!((vl - 12.0).abs() < 1e-9);
        assert!((vr - 12.0).abs() < 1e-9);
    }

    #[test]
    fn replan_is_rate_limited_and_corridor_triggered() {
        let goal = Vec2::new(10.0, 0.0);
        let mut n = nav(&[], goal);
        // nothing intrudes: no replan
        assert!(!n.maybe_replan(Vec2::ZERO, &[], 1.0));
        // obstacle dropped onto the corridor
        let blocker = [Obstacle::fixed(9, Vec2::new(5.0, 0.0), 0.4)];
        assert!(n.maybe_replan(Vec2::ZERO, &blocker, 2.0));
        assert_eq!(n.replan_times, vec![2.0]);
        // immediately after: rate limit blocks the check
        assert!(!n.maybe_replan(Vec2::ZERO, &blocker, 2.1));
    }
}
