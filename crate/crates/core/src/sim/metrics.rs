use serde::{Deserialize, Serialize};

use super::log::TrajectoryLog;
use crate::nav::PlannedPath;

/// Scalar summary of one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metrics {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_to_goal_s: Option<f64>,
    pub path_length_m: f64,
    pub final_distance_m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_obstacle_clearance_m: Option<f64>,
    pub tracking_error_mean_m: f64,
    pub tracking_error_max_m: f64,
    pub collision_count: u32,
    pub replan_count: u32,
}

/// Tracking error at each tick against the plan that was active then.
pub fn tracking_series(log: &TrajectoryLog) -> Vec<(f64, f64)> {
    log.ticks
        .iter()
        .map(|k| (k.t, log.plan_at(k.t).distance_to(k.pose.position())))
        .collect()
}

/// Summary statistics for a run. `planned` overrides the log's own plan
/// history as the tracking reference when given.
pub fn compute_metrics(log: &TrajectoryLog, planned: Option<&PlannedPath>) -> Metrics {
    let series: Vec<f64> = match planned {
        Some(p) => log
            .ticks
            .iter()
            .map(|k| p.distance_to(k.pose.position()))
            .collect(),
        None => tracking_series(log).into_iter().map(|(_, e)| e).collect(),
    };
    let (mut sum, mut max) = (0.0, 0.0f64);
    for &e in &series {
        sum += e;
        max = max.max(e);
    }
    let mean = if series.is_empty() {
        0.0
    } else {
        sum / series.len() as f64
    };
    let final_distance = log
        .ticks
        .last()
        .map(|k| k.pose.position().distance(log.goal))
        .unwrap_or(f64::NAN);
    Metrics {
        status: log.status.label().to_owned(),
        time_to_goal_s: match log.status {
            super::log::Status::GoalReached { t } => Some(t),
            _ => None,
        },
        path_length_m: log.path_length(),
        final_distance_m: final_distance,
        min_obstacle_clearance_m: log.min_clearance,
        tracking_error_mean_m: mean,
        tracking_error_max_m: max,
        collision_count: u32::from(log.status.collided()),
        replan_count: log.replan_times().len() as u32,
    }
}
