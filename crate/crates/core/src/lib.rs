//! Deterministic 2D navigation stack for a differential-drive mobile robot.
//!
//! A Mamdani fuzzy controller drives the robot from a start pose to a goal
//! through static and moving obstacles, with the full
//! sensor → controller → motor → kinematics loop simulated on a fixed clock
//! and logged tick by tick.
//!
//! - [`fuzzy`]: generic Mamdani inference (no robotics semantics)
//! - [`model`]: DC motor dynamics + differential-drive kinematics
//! - [`sensors`]: simulated ultrasonic ranging, GPS, odometry, fusion
//! - [`nav`]: the six-input/two-output navigation controller and planner
//! - [`sim`]: scenario runner, trajectory logs, metrics, batch execution

pub mod error;
pub mod fuzzy;
pub mod geom;
pub mod model;
pub mod nav;
pub mod sensors;
pub mod sim;

pub use error::{ModelError, NavError, SimError};
pub use geom::Vec2;
