use serde::{Deserialize, Serialize};

use crate::model::{pose_step, BodyTwist, ChassisParams, Pose};

/// Dead-reckoned pose plus the accumulated wheel angles it was built from.
/// Only [`encoder_update`] mutates it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdometryState {
    pub pose: Pose,
    pub wheel_left: f64,
    pub wheel_right: f64,
}

impl OdometryState {
    pub fn new(start: Pose) -> Self {
        Self {
            pose: start,
            wheel_left: 0.0,
            wheel_right: 0.0,
        }
    }
}

/// Integrates one pair of encoder increments (rad) into the dead-reckoned
/// pose using the same exact-arc update as the plant, so noise-free encoders
/// reproduce the true trajectory.
pub fn encoder_update(
    odo: &OdometryState,
    d_theta_left: f64,
    d_theta_right: f64,
    chassis: &ChassisParams,
) -> OdometryState {
    let r = chassis.wheel_radius;
    // Arc lengths over the step become a unit-time twist.
    let twist = BodyTwist {
        v: r * (d_theta_right + d_theta_left) * 0.5,
        omega: r * (d_theta_right - d_theta_left) / chassis.axle_length,
    };
    let pose = if d_theta_left == 0.0 && d_theta_right == 0.0 {
        odo.pose
    } else {
        pose_step(&odo.pose, &twist, 1.0)
    };
    OdometryState {
        pose,
        wheel_left: odo.wheel_left + d_theta_left,
        wheel_right: odo.wheel_right + d_theta_right,
    }
}
