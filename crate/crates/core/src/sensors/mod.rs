//! Simulated perception: four-direction ultrasonic ranging, noisy GPS fixes,
//! compass heading, wheel-encoder dead reckoning, and the complementary
//! location blend.

mod obstacle;
mod odometry;
mod rig;

pub use obstacle::Obstacle;
pub use odometry::{encoder_update, OdometryState};
pub use rig::{gps_read, SensorConfig, SensorRig};

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::model::Pose;

/// One snapshot of everything the controller can see.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorFrame {
    /// Range readings (m), clamped to the sensor's max range.
    pub front: f64,
    pub back: f64,
    pub left: f64,
    pub right: f64,
    /// Most recent GPS position fix (held between fixes).
    pub gps: Vec2,
    /// Compass heading (rad, wrapped).
    pub heading: f64,
    /// Simulation time of the snapshot (s).
    pub timestamp: f64,
}

impl SensorFrame {
    pub fn ranges(&self) -> [f64; 4] {
        [self.front, self.back, self.left, self.right]
    }
}

/// Body-frame beam directions: front, back, left, right.
const BEAM_ANGLES: [f64; 4] = [
    0.0,
    std::f64::consts::PI,
    std::f64::consts::FRAC_PI_2,
    -std::f64::consts::FRAC_PI_2,
];

/// Casts one ideal ray per side from the robot center and reports the
/// distance to the nearest obstacle surface, clamped to `max_range`.
/// A robot center inside any obstacle reads zero on all four rays.
pub fn ultrasonic_scan(true_pose: &Pose, world: &[Obstacle], max_range: f64) -> [f64; 4] {
    let origin = true_pose.position();
    if world.iter().any(|o| o.contains(origin)) {
        return [0.0; 4];
    }
    let mut out = [max_range; 4];
    for (slot, body_angle) in BEAM_ANGLES.iter().enumerate() {
        let dir = Vec2::from_angle(true_pose.theta + body_angle);
        let mut best = max_range;
        for o in world {
            if let Some(t) = ray_circle(origin, dir, o.center, o.radius) {
                if t < best {
                    best = t;
                }
            }
        }
        out[slot] = best;
    }
    out
}

/// Nearest non-negative intersection parameter of the ray `o + t·d` (unit
/// `d`) with a circle, if any.
fn ray_circle(origin: Vec2, dir: Vec2, center: Vec2, radius: f64) -> Option<f64> {
    let oc = origin - center;
    let b = oc.dot(dir);
    let c = oc.norm_sq() - radius * radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let t1 = -b - s;
    let t2 = -b + s;
    if t1 >= 0.0 {
        Some(t1)
    } else if t2 >= 0.0 {
        // origin inside the circle; surface is ahead at t2
        Some(t2)
    } else {
        None
    }
}

/// Complementary position blend: `alpha·gps + (1 − alpha)·odometry`.
/// Heading always comes from odometry/compass, never from GPS.
pub fn fuse_location(gps: Vec2, odo: Vec2, alpha: f64) -> Vec2 {
    debug_assert!((0.0..=1.0).contains(&alpha));
    gps * alpha + odo * (1.0 - alpha)
}
