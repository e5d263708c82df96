use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;

/// Wraps an angle to `(-PI, PI]`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Planar configuration `(x, y, θ)`; θ counter-clockwise from +x, kept
/// wrapped to `(-PI, PI]` by every update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap_angle(theta),
        }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Body-frame velocity: forward speed along the heading and yaw rate.
/// Lateral velocity is identically zero (no skidding).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BodyTwist {
    /// m/s along the body x-axis.
    pub v: f64,
    /// rad/s, counter-clockwise positive.
    pub omega: f64,
}

impl BodyTwist {
    pub fn new(v: f64, omega: f64) -> Self {
        Self { v, omega }
    }
}
