//! Configuration for the navigation engine: membership breakpoints and the
//! output speed range. Everything here is retunable data, not code; the
//! shipped defaults live in `config/navigator.json`.

use serde::{Deserialize, Serialize};

use crate::error::NavError;
use crate::fuzzy::Rule;

/// Input variable names, in engine order.
pub const VAR_DISTANCE: &str = "target_distance";
pub const VAR_DIRECTION: &str = "direction_error";
pub const VAR_FRONT: &str = "obstacle_front";
pub const VAR_BACK: &str = "obstacle_back";
pub const VAR_LEFT: &str = "obstacle_left";
pub const VAR_RIGHT: &str = "obstacle_right";
/// Output variable names.
pub const VAR_WHEEL_LEFT: &str = "wheel_left";
pub const VAR_WHEEL_RIGHT: &str = "wheel_right";

/// Distance term labels.
pub const DIST_TERMS: [&str; 4] = ["Zero", "Near", "Medium", "Far"];
/// Direction-error term labels (negative = goal clockwise of heading).
pub const DIR_TERMS: [&str; 5] = ["LN", "SN", "Z", "SP", "LP"];
/// Obstacle range term labels.
pub const OBS_TERMS: [&str; 3] = ["VeryNear", "Near", "Far"];
/// Wheel speed term labels, slowest reverse to fastest forward.
pub const WHEEL_TERMS: [&str; 7] = [
    "Back_F", "Back_M", "Back_S", "Stop", "Fwd_S", "Fwd_M", "Fwd_F",
];

/// Angular speed with an explicit unit tag; rpm converts at parse time.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngularSpeed {
    /// Bare number, rad/s.
    RadPerSec(f64),
    Tagged { value: f64, unit: SpeedUnit },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpeedUnit {
    #[serde(rename = "rad_s")]
    RadPerSec,
    #[serde(rename = "rpm")]
    Rpm,
}

impl AngularSpeed {
    pub fn rad_per_sec(self) -> f64 {
        match self {
            Self::RadPerSec(v) => v,
            Self::Tagged {
                value,
                unit: SpeedUnit::RadPerSec,
            } => value,
            Self::Tagged {
                value,
                unit: SpeedUnit::Rpm,
            } => value * std::f64::consts::TAU / 60.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct DistanceTerms {
    pub universe_m: [f64; 2],
    /// triangle
    pub zero: [f64; 3],
    /// triangle
    pub near: [f64; 3],
    /// triangle
    pub medium: [f64; 3],
    /// right shoulder
    pub far: [f64; 2],
}

impl Default for DistanceTerms {
    fn default() -> Self {
        Self {
            universe_m: [0.0, 100.0],
            zero: [0.0, 0.0, 0.3],
            near: [0.1, 1.0, 5.0],
            medium: [3.0, 10.0, 25.0],
            far: [20.0, 50.0],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct DirectionTerms {
    /// left shoulder
    pub large_negative: [f64; 2],
    /// triangle
    pub small_negative: [f64; 3],
    /// triangle
    pub zero: [f64; 3],
    /// triangle
    pub small_positive: [f64; 3],
    /// right shoulder
    pub large_positive: [f64; 2],
}

impl Default for DirectionTerms {
    fn default() -> Self {
        Self {
            large_negative: [-2.4, -1.2],
            small_negative: [-1.6, -0.8, 0.0],
            zero: [-0.35, 0.0, 0.35],
            small_positive: [0.0, 0.8, 1.6],
            large_positive: [1.2, 2.4],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ObstacleTerms {
    pub universe_m: [f64; 2],
    /// triangle
    pub very_near: [f64; 3],
    /// triangle
    pub near: [f64; 3],
    /// right shoulder
    pub far: [f64; 2],
}

impl Default for ObstacleTerms {
    fn default() -> Self {
        Self {
            universe_m: [0.0, 4.0],
            very_near: [0.0, 0.0, 0.6],
            near: [0.4, 1.2, 2.2],
            far: [1.8, 4.0],
        }
    }
}

/// Full engine specification. Rules default to the built-in layered base
/// compiled from the term structure; an explicit list overrides it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineSpec {
    /// Wheel speed setpoint ceiling (also the output universe half-width).
    pub omega_max: AngularSpeed,
    pub target_distance: DistanceTerms,
    pub direction_error: DirectionTerms,
    pub obstacle: ObstacleTerms,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<Rule>>,
}

impl Default for EngineSpec {
    fn default() -> Self {
        Self {
            // 200 rpm, the configured top wheel speed
            omega_max: AngularSpeed::Tagged {
                value: 200.0,
                unit: SpeedUnit::Rpm,
            },
            target_distance: DistanceTerms::default(),
            direction_error: DirectionTerms::default(),
            obstacle: ObstacleTerms::default(),
            rules: None,
        }
    }
}

impl EngineSpec {
    pub fn from_json(text: &str) -> Result<Self, NavError> {
        serde_json::from_str(text).map_err(|e| NavError::BadConfig {
            detail: e.to_string(),
        })
    }

    pub fn omega_max_rad_s(&self) -> f64 {
        self.omega_max.rad_per_sec()
    }
}
