use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::model::wrap_angle;

/// Crisp controller inputs, one per linguistic variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NavInputs {
    pub target_distance: f64,
    /// Bearing-to-target minus heading, wrapped to `(-PI, PI]`.
    pub direction_error: f64,
    pub obstacle_front: f64,
    pub obstacle_back: f64,
    pub obstacle_left: f64,
    pub obstacle_right: f64,
}

impl NavInputs {
    pub fn ranges(&self) -> [f64; 4] {
        [
            self.obstacle_front,
            self.obstacle_back,
            self.obstacle_left,
            self.obstacle_right,
        ]
    }
}

/// Distance and wrapped bearing error from the current position/heading to
/// a goal point. At the goal itself any bearing is acceptable, so the error
/// is defined as zero.
pub fn target_geometry(current: Vec2, heading: f64, goal: Vec2) -> (f64, f64) {
    let delta = goal - current;
    let distance = delta.norm();
    if distance < 1e-9 {
        (distance, 0.0)
    } else {
        (distance, wrap_angle(delta.angle() - heading))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn three_four_five_triangle() {
        let (d, e) = target_geometry(Vec2::ZERO, 0.0, Vec2::new(3.0, 4.0));
        assert!((d - 5.0).abs() < 1e-12);
        assert!((e - 0.9272952180016122).abs() < 1e-12);
    }

    #[test]
    fn at_goal_error_is_zero() {
        let (d, e) = target_geometry(Vec2::new(1.0, 1.0), 2.3, Vec2::new(1.0, 1.0));
        assert_eq!(d, 0.0);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn error_wraps_through_pi() {
        // heading just below +PI, bearing just above -PI: small positive error
        let heading = PI - 0.05;
        let goal = Vec2::from_angle(-PI + 0.05) * 10.0;
        let (_, e) = target_geometry(Vec2::ZERO, heading, goal);
        assert!((e - 0.1).abs() < 1e-9, "e={e}");
    }
}
