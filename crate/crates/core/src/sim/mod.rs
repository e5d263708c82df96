//! Deterministic scenario execution: fixed-clock stepping of world, sensors,
//! controller, and plant, with per-tick logging, scalar metrics, and a
//! seed-fanning batch runner.

mod batch;
mod log;
mod metrics;
mod runner;
mod scenario;

pub use batch::{run_batch, BatchRow, BatchSummary};
pub use log::{SimEvent, Status, Tick, TrajectoryLog, CSV_HEADER};
pub use metrics::{compute_metrics, tracking_series, Metrics};
pub use runner::run_scenario;
pub use scenario::{
    ControllerSpec, ObstacleSpec, RobotSpec, Scenario, StartPose, WorldGen, WorldSpec,
    SCHEMA_VERSION,
};
