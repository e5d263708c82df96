//! The navigation controller: six fuzzy inputs (goal distance and bearing
//! error, four obstacle ranges), two wheel-speed outputs, a tangent-detour
//! path planner with corridor-triggered replanning, and the voltage bridge
//! to the motor driver.

mod builder;
mod controller;
mod geometry;
mod planner;
mod spec;

pub use builder::{
    build_navigation_engine, default_rules, mirrored_spec, NavEngine, VALIDATION_GRID,
};
pub use controller::{speed_to_voltage, ControllerConfig, Navigator, WheelCommand};
pub use geometry::{target_geometry, NavInputs};
pub use planner::{plan_path, tracking_error, PlannedPath};
pub use spec::{
    AngularSpeed, DirectionTerms, DistanceTerms, EngineSpec, ObstacleTerms, SpeedUnit,
    DIR_TERMS, DIST_TERMS, OBS_TERMS, VAR_BACK, VAR_DIRECTION, VAR_DISTANCE, VAR_FRONT, VAR_LEFT,
    VAR_RIGHT, VAR_WHEEL_LEFT, VAR_WHEEL_RIGHT, WHEEL_TERMS,
};
