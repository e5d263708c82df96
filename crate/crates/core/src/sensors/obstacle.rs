use serde::{Deserialize, Serialize};

use crate::geom::Vec2;

/// A circular obstacle, optionally translating at constant velocity and
/// optionally present only during a time window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub id: u32,
    pub center: Vec2,
    pub radius: f64,
    /// m/s; zero for static obstacles.
    #[serde(default)]
    pub velocity: Vec2,
    /// Simulation time at which the obstacle appears.
    #[serde(default)]
    pub spawn_time: f64,
    /// Simulation time at which it disappears, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub despawn_time: Option<f64>,
    /// Reflect velocity at the world bounds instead of leaving.
    #[serde(default)]
    pub bounce: bool,
}

impl Obstacle {
    pub fn fixed(id: u32, center: Vec2, radius: f64) -> Self {
        Self {
            id,
            center,
            radius,
            velocity: Vec2::ZERO,
            spawn_time: 0.0,
            despawn_time: None,
            bounce: false,
        }
    }

    pub fn active_at(&self, t: f64) -> bool {
        t >= self.spawn_time && self.despawn_time.map_or(true, |d| t < d)
    }

    pub fn is_moving(&self) -> bool {
        self.velocity.norm_sq() > 0.0
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.distance(self.center) < self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn activity_window() {
        let mut o = Obstacle::fixed(0, Vec2::ZERO, 1.0);
        o.spawn_time = 2.0;
        o.despawn_time = Some(5.0);
        assert!(!o.active_at(1.9));
        assert!(o.active_at(2.0));
        assert!(o.active_at(4.99));
        assert!(!o.active_at(5.0));
    }
}
