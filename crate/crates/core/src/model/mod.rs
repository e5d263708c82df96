//! Plant model: per-wheel DC motor dynamics feeding differential-drive
//! kinematics with exact-arc pose integration.

mod kinematics;
mod motor;
mod pose;

pub use kinematics::{body_twist, icc_radius, pose_step, ChassisParams, EPS_STRAIGHT};
pub use motor::{motor_step, MotorParams, MotorState};
pub use pose::{wrap_angle, BodyTwist, Pose};

use crate::error::ModelError;

/// One simulation step of the whole plant: both motors integrate under their
/// terminal voltages, the new shaft speeds couple directly to the wheels,
/// and the pose advances along the resulting arc.
#[allow(clippy::too_many_arguments)]
pub fn robot_step(
    pose: &Pose,
    left: &MotorState,
    right: &MotorState,
    volts_left: f64,
    volts_right: f64,
    chassis: &ChassisParams,
    motor: &MotorParams,
    dt: f64,
) -> Result<(Pose, MotorState, MotorState), ModelError> {
    let left_next = motor_step(left, volts_left, motor, dt)?;
    let right_next = motor_step(right, volts_right, motor, dt)?;
    let twist = body_twist(left_next.omega, right_next.omega, chassis);
    let pose_next = pose_step(pose, &twist, dt);
    Ok((pose_next, left_next, right_next))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_volts_drive_straight() {
        let chassis = ChassisParams::default();
        let motor = MotorParams::default();
        let mut pose = Pose::new(0.0, 0.0, 0.0);
        let mut l = MotorState::default();
        let mut r = MotorState::default();
        for _ in 0..200 {
            let (p, ln, rn) =
                robot_step(&pose, &l, &r, 6.0, 6.0, &chassis, &motor, 0.01).unwrap();
            pose = p;
            l = ln;
            r = rn;
        }
        assert!(pose.x > 0.1);
        assert_eq!(pose.y, 0.0);
        assert_eq!(pose.theta, 0.0);
    }

    #[test]
    fn antisymmetric_volts_pivot_in_place() {
        let chassis = ChassisParams::default();
        let motor = MotorParams::default();
        let mut pose = Pose::new(0.0, 0.0, 0.0);
        let mut l = MotorState::default();
        let mut r = MotorState::default();
        for _ in 0..500 {
            let (p, ln, rn) =
                robot_step(&pose, &l, &r, -6.0, 6.0, &chassis, &motor, 0.01).unwrap();
            pose = p;
            l = ln;
            r = rn;
        }
        assert!(pose.x.abs() < 1e-9);
        assert!(pose.y.abs() < 1e-9);
        assert!(pose.theta.abs() > 0.5);
    }
}
