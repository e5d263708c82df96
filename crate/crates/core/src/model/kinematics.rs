use serde::{Deserialize, Serialize};

use super::pose::{wrap_angle, BodyTwist, Pose};
use crate::error::ModelError;

/// Yaw rates smaller than this are treated as straight-line motion; the arc
/// update is singular at ω = 0 and this sits below the float noise of any
/// scenario-scale trajectory.
pub const EPS_STRAIGHT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct ChassisParams {
    /// Wheel radius r (m).
    #[serde(rename = "wheel_radius_m")]
    pub wheel_radius: f64,
    /// Distance between the two drive wheels l (m).
    #[serde(rename = "axle_length_m")]
    pub axle_length: f64,
    /// Carried in configuration for completeness; the rigid-body equations
    /// model only motor inertia, so mass does not enter the dynamics.
    #[serde(rename = "mass_kg")]
    pub mass: f64,
}

impl Default for ChassisParams {
    fn default() -> Self {
        Self {
            wheel_radius: 0.07,
            axle_length: 0.32,
            mass: 6.0,
        }
    }
}

impl ChassisParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.wheel_radius > 0.0 && self.wheel_radius.is_finite()) {
            return Err(ModelError::BadParameter {
                name: "wheel_radius",
                value: self.wheel_radius,
            });
        }
        if !(self.axle_length > 0.0 && self.axle_length.is_finite()) {
            return Err(ModelError::BadParameter {
                name: "axle_length",
                value: self.axle_length,
            });
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(ModelError::BadParameter {
                name: "mass",
                value: self.mass,
            });
        }
        Ok(())
    }
}

/// Forward kinematics: wheel shaft speeds to body twist.
/// `v = r(ω_r + ω_l)/2`, `ω = r(ω_r − ω_l)/l`; a faster right wheel turns
/// the robot counter-clockwise.
pub fn body_twist(omega_left: f64, omega_right: f64, chassis: &ChassisParams) -> BodyTwist {
    let r = chassis.wheel_radius;
    BodyTwist {
        v: r * (omega_right + omega_left) * 0.5,
        omega: r * (omega_right - omega_left) / chassis.axle_length,
    }
}

/// Instantaneous curvature radius about the ICC, measured from the axle
/// midpoint: `R = (l/2)(v_r + v_l)/(v_r − v_l)`. `None` means straight-line
/// motion (infinite radius).
pub fn icc_radius(v_left: f64, v_right: f64, axle_length: f64) -> Option<f64> {
    let dv = v_right - v_left;
    if dv.abs() < EPS_STRAIGHT {
        None
    } else {
        Some(0.5 * axle_length * (v_right + v_left) / dv)
    }
}

/// Advances a pose along the exact circular arc described by a constant
/// body twist. Falls back to the straight-line limit for |ω| below
/// [`EPS_STRAIGHT`].
pub fn pose_step(p: &Pose, t: &BodyTwist, dt: f64) -> Pose {
    debug_assert!(dt > 0.0);
    if t.omega.abs() < EPS_STRAIGHT {
        Pose {
            x: p.x + t.v * dt * p.theta.cos(),
            y: p.y + t.v * dt * p.theta.sin(),
            theta: wrap_angle(p.theta + t.omega * dt),
        }
    } else {
        let radius = t.v / t.omega;
        let theta1 = p.theta + t.omega * dt;
        Pose {
            x: p.x + radius * (theta1.sin() - p.theta.sin()),
            y: p.y + radius * (p.theta.cos() - theta1.cos()),
            theta: wrap_angle(theta1),
        }
    }
}
