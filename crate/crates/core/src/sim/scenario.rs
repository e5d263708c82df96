use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::geom::Vec2;
use crate::model::{ChassisParams, MotorParams, Pose};
use crate::nav::{ControllerConfig, EngineSpec};
use crate::sensors::{Obstacle, SensorConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StartPose {
    pub x_m: f64,
    pub y_m: f64,
    pub theta_rad: f64,
}

impl From<StartPose> for Pose {
    fn from(s: StartPose) -> Self {
        Pose::new(s.x_m, s.y_m, s.theta_rad)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ObstacleSpec {
    pub center_m: [f64; 2],
    pub radius_m: f64,
    #[serde(default)]
    pub velocity_m_s: [f64; 2],
    #[serde(default)]
    pub spawn_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub despawn_s: Option<f64>,
    #[serde(default)]
    pub bounce: bool,
}

impl ObstacleSpec {
    fn to_obstacle(self, id: u32) -> Obstacle {
        Obstacle {
            id,
            center: Vec2::new(self.center_m[0], self.center_m[1]),
            radius: self.radius_m,
            velocity: Vec2::new(self.velocity_m_s[0], self.velocity_m_s[1]),
            spawn_time: self.spawn_s,
            despawn_time: self.despawn_s,
            bounce: self.bounce,
        }
    }
}

/// Procedural world block: obstacles drawn from the scenario seed, so each
/// seed of a batch sees a different field.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct WorldGen {
    pub static_count: usize,
    pub static_radius_m: [f64; 2],
    pub moving_count: usize,
    pub moving_radius_m: [f64; 2],
    pub moving_speed_max_m_s: f64,
    /// No generated obstacle may intrude within this margin of the start or
    /// goal point (beyond its own radius).
    pub keep_out_m: f64,
}

impl Default for WorldGen {
    fn default() -> Self {
        Self {
            static_count: 8,
            static_radius_m: [0.3, 0.8],
            moving_count: 2,
            moving_radius_m: [0.25, 0.35],
            moving_speed_max_m_s: 0.5,
            keep_out_m: 1.5,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorldSpec {
    /// `[[min_x, min_y], [max_x, max_y]]` (m).
    pub bounds_m: [[f64; 2]; 2],
    #[serde(default)]
    pub obstacles: Vec<ObstacleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generate: Option<WorldGen>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RobotSpec {
    pub chassis: ChassisParams,
    pub motor: MotorParams,
    /// Collision disc radius (m); must cover the chassis.
    pub footprint_radius_m: f64,
}

impl Default for RobotSpec {
    fn default() -> Self {
        Self {
            chassis: ChassisParams::default(),
            motor: MotorParams::default(),
            footprint_radius_m: 0.25,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ControllerSpec {
    #[serde(flatten)]
    pub tuning: ControllerConfig,
    /// Inline engine override; the built-in default engine otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineSpec>,
}

impl Default for ControllerSpec {
    fn default() -> Self {
        Self {
            tuning: ControllerConfig::default(),
            engine: None,
        }
    }
}

/// A complete, self-contained simulation description. Field names carry
/// their units; all randomness derives from `seed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub seed: u64,
    pub duration_s: f64,
    #[serde(default = "default_dt")]
    pub dt_s: f64,
    #[serde(default = "default_dt")]
    pub control_period_s: f64,
    pub start: StartPose,
    pub goal_m: [f64; 2],
    #[serde(default = "default_goal_radius")]
    pub goal_radius_m: f64,
    #[serde(default)]
    pub robot: RobotSpec,
    pub world: WorldSpec,
    #[serde(default)]
    pub sensors: SensorConfig,
    #[serde(default)]
    pub controller: ControllerSpec,
}

fn default_dt() -> f64 {
    0.01
}

fn default_goal_radius() -> f64 {
    0.2
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::Parse {
            detail: e.to_string(),
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn goal(&self) -> Vec2 {
        Vec2::new(self.goal_m[0], self.goal_m[1])
    }

    pub fn start_pose(&self) -> Pose {
        self.start.into()
    }

    /// Physics ticks per control update.
    pub fn control_divisor(&self) -> usize {
        (self.control_period_s / self.dt_s).round() as usize
    }

    /// Hard validation of everything checkable before stepping.
    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |detail: String| Err(SimError::InvalidScenario { detail });
        if self.schema_version != SCHEMA_VERSION {
            return fail(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if !(self.dt_s > 0.0 && self.dt_s.is_finite()) {
            return fail(format!("dt_s must be positive, got {}", self.dt_s));
        }
        if self.duration_s < self.dt_s {
            return fail(format!(
                "duration_s {} shorter than one tick {}",
                self.duration_s, self.dt_s
            ));
        }
        let ratio = self.control_period_s / self.dt_s;
        if (ratio - ratio.round()).abs() > 1e-9 || ratio < 1.0 - 1e-9 {
            return fail(format!(
                "control_period_s must be an integer multiple of dt_s, got ratio {ratio}"
            ));
        }
        self.robot.chassis.validate()?;
        self.robot.motor.validate()?;
        if !(self.robot.footprint_radius_m > 0.0) {
            return fail("footprint_radius_m must be positive".into());
        }
        if !(self.goal_radius_m > 0.0) {
            return fail("goal_radius_m must be positive".into());
        }
        // RK4 stability margin on the motor poles.
        let bound = self.robot.motor.spectral_bound() * self.dt_s;
        if bound > 2.5 {
            return fail(format!(
                "dt_s too large for the motor dynamics (|λ|·dt = {bound:.3} > 2.5)"
            ));
        }
        let s = &self.sensors;
        if s.gps_sigma_m < 0.0
            || s.compass_sigma_rad < 0.0
            || !(s.max_range_m > 0.0)
            || !(s.gps_period_s > 0.0)
        {
            return fail("sensor config out of range".into());
        }
        if !(0.0..=1.0).contains(&self.controller.tuning.fusion_alpha) {
            return fail("fusion_alpha must lie in [0, 1]".into());
        }
        let [[min_x, min_y], [max_x, max_y]] = self.world.bounds_m;
        if !(min_x < max_x && min_y < max_y) {
            return fail("world bounds_m must span a positive area".into());
        }
        for (i, o) in self.world.obstacles.iter().enumerate() {
            if !(o.radius_m > 0.0) {
                return fail(format!("obstacle {i} radius must be positive"));
            }
            if let Some(d) = o.despawn_s {
                if d <= o.spawn_s {
                    return fail(format!("obstacle {i}: despawn_s must exceed spawn_s"));
                }
            }
        }
        // No tunneling: per-tick closure speed stays under the smallest
        // obstacle radius so disc-overlap collision checks are sound.
        let top_speed = self.robot.chassis.wheel_radius
            * self
                .robot
                .motor
                .steady_state_speed(self.controller.tuning.v_max_volts);
        let moving_max = self
            .world
            .generate
            .map(|g| g.moving_speed_max_m_s)
            .unwrap_or(0.0)
            .max(
                self.world
                    .obstacles
                    .iter()
                    .map(|o| {
                        Vec2::new(o.velocity_m_s[0], o.velocity_m_s[1]).norm()
                    })
                    .fold(0.0, f64::max),
            );
        let min_radius = self
            .world
            .obstacles
            .iter()
            .map(|o| o.radius_m)
            .chain(self.world.generate.iter().flat_map(|g| {
                [g.static_radius_m[0], g.moving_radius_m[0]]
            }))
            .fold(f64::INFINITY, f64::min);
        if min_radius.is_finite()
            && (top_speed + moving_max) * self.dt_s >= min_radius
        {
            return fail(format!(
                "dt_s {} allows tunneling: per-tick closure {} >= min obstacle radius {}",
                self.dt_s,
                (top_speed + moving_max) * self.dt_s,
                min_radius
            ));
        }
        Ok(())
    }

    /// Explicit obstacles plus the seed-generated field, ids assigned in
    /// order. Deterministic for a given scenario.
    pub fn build_obstacles(&self) -> Vec<Obstacle> {
        let mut out: Vec<Obstacle> = self
            .world
            .obstacles
            .iter()
            .enumerate()
            .map(|(i, o)| o.to_obstacle(i as u32))
            .collect();
        if let Some(gen) = self.world.generate {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(0);
            let [[min_x, min_y], [max_x, max_y]] = self.world.bounds_m;
            let start = Vec2::new(self.start.x_m, self.start.y_m);
            let goal = self.goal();
            let place = |radius: f64, rng: &mut ChaCha8Rng| -> Vec2 {
                // rejection-sample a center clear of start and goal
                for _ in 0..1000 {
                    let c = Vec2::new(
                        rng.gen_range(min_x + radius..max_x - radius),
                        rng.gen_range(min_y + radius..max_y - radius),
                    );
                    let margin = radius + gen.keep_out_m;
                    if c.distance(start) > margin && c.distance(goal) > margin {
                        return c;
                    }
                }
                Vec2::new(0.5 * (min_x + max_x), 0.5 * (min_y + max_y))
            };
            let mut id = out.len() as u32;
            for _ in 0..gen.static_count {
                let radius = rng.gen_range(gen.static_radius_m[0]..=gen.static_radius_m[1]);
                let center = place(radius, &mut rng);
                out.push(Obstacle::fixed(id, center, radius));
                id += 1;
            }
            for _ in 0..gen.moving_count {
                let radius = rng.gen_range(gen.moving_radius_m[0]..=gen.moving_radius_m[1]);
                let center = place(radius, &mut rng);
                let speed = rng.gen_range(0.3 * gen.moving_speed_max_m_s..=gen.moving_speed_max_m_s);
                let heading = rng.gen_range(0.0..std::f64::consts::TAU);
                out.push(Obstacle {
                    id,
                    center,
                    radius,
                    velocity: Vec2::from_angle(heading) * speed,
                    spawn_time: 0.0,
                    despawn_time: None,
                    bounce: true,
                });
                id += 1;
            }
        }
        out
    }

    /// A timed obstacle insertion (the moving-world experiments).
    pub fn spawn_event(&self, t: f64, spec: ObstacleSpec) -> Result<Scenario, SimError> {
        if t >= self.duration_s {
            return Err(SimError::InvalidScenario {
                detail: format!(
                    "spawn at t={t} is beyond the scenario duration {}",
                    self.duration_s
                ),
            });
        }
        let mut next = self.clone();
        next.world.obstacles.push(ObstacleSpec {
            spawn_s: t,
            ..spec
        });
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn minimal() -> Scenario {
        Scenario {
            schema_version: 1,
            name: None,
            seed: 1,
            duration_s: 10.0,
            dt_s: 0.01,
            control_period_s: 0.01,
            start: StartPose {
                x_m: 0.0,
                y_m: 0.0,
                theta_rad: 0.0,
            },
            goal_m: [5.0, 0.0],
            goal_radius_m: 0.2,
            robot: RobotSpec::default(),
            world: WorldSpec {
                bounds_m: [[-10.0, -10.0], [10.0, 10.0]],
                obstacles: vec![],
                generate: None,
            },
            sensors: SensorConfig::default(),
            controller: ControllerSpec::default(),
        }
    }

    #[test]
    fn minimal_scenario_validates() {
        minimal().validate().unwrap();
    }

    #[test]
    fn non_integer_control_ratio_rejected() {
        let mut s = minimal();
        s.control_period_s = 0.015;
        assert!(s.validate().is_err());
    }

    #[test]
    fn tiny_obstacle_forces_tunneling_error() {
        let mut s = minimal();
        s.world.obstacles.push(ObstacleSpec {
            center_m: [3.0, 3.0],
            radius_m: 0.01,
            velocity_m_s: [0.0, 0.0],
            spawn_s: 0.0,
            despawn_s: None,
            bounce: false,
        });
        assert!(s.validate().is_err());
    }

    #[test]
    fn worldgen_is_seed_deterministic() {
        let mut s = minimal();
        s.world.generate = Some(WorldGen::default());
        let a = s.build_obstacles();
        let b = s.build_obstacles();
        assert_eq!(a, b);
        s.seed = 2;
        assert_ne!(a, s.build_obstacles());
    }

    #[test]
    fn spawn_event_appends_timed_obstacle() {
        let s = minimal();
        let spec = ObstacleSpec {
            center_m: [2.0, 0.0],
            radius_m: 0.4,
            velocity_m_s: [0.0, 0.0],
            spawn_s: 0.0,
            despawn_s: None,
            bounce: false,
        };
        let s2 = s.spawn_event(3.0, spec).unwrap();
        assert_eq!(s2.world.obstacles.len(), 1);
        assert_eq!(s2.world.obstacles[0].spawn_s, 3.0);
        assert!(s.spawn_event(11.0, spec).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = minimal();
        let text = s.to_json_pretty();
        let again = Scenario::from_json(&text).unwrap();
        assert_eq!(s.seed, again.seed);
        assert_eq!(s.goal_m, again.goal_m);
    }
}
