use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::model::{MotorState, Pose};
use crate::nav::{PlannedPath, WheelCommand};
use crate::sensors::{Obstacle, SensorFrame};

/// Fixed CSV header for trajectory exports.
pub const CSV_HEADER: &str = "t,x,y,theta,fx,fy,front,back,left,right,wl_cmd,wr_cmd,Vl,Vr,wl,wr";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Status {
    GoalReached { t: f64 },
    Collision { t: f64, obstacle_id: u32 },
    Timeout,
}

impl Status {
    pub fn reached(&self) -> bool {
        matches!(self, Status::GoalReached { .. })
    }

    pub fn collided(&self) -> bool {
        matches!(self, Status::Collision { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::GoalReached { .. } => "goal_reached",
            Status::Collision { .. } => "collision",
            Status::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SimEvent {
    Spawn { t: f64, obstacle_id: u32 },
    Despawn { t: f64, obstacle_id: u32 },
    Replan { t: f64 },
}

impl SimEvent {
    pub fn time(&self) -> f64 {
        match *self {
            SimEvent::Spawn { t, .. } | SimEvent::Despawn { t, .. } | SimEvent::Replan { t } => t,
        }
    }
}

/// One record per physics tick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tick {
    pub t: f64,
    pub pose: Pose,
    pub fused: Vec2,
    pub frame: SensorFrame,
    pub cmd: WheelCommand,
    pub volts_left: f64,
    pub volts_right: f64,
    pub left: MotorState,
    pub right: MotorState,
}

/// Everything one run produced: per-tick records, terminal status, the plan
/// history, events, and the resolved obstacle set (for replay and plotting).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryLog {
    pub seed: u64,
    pub dt: f64,
    pub goal: Vec2,
    pub footprint_radius: f64,
    pub ticks: Vec<Tick>,
    pub status: Status,
    /// Plans in activation order; the first is the initial plan.
    pub plans: Vec<PlannedPath>,
    pub events: Vec<SimEvent>,
    /// Obstacles as resolved at t = 0 (generated ones included).
    pub obstacles: Vec<Obstacle>,
    /// Obstacle positions at the end of the run (moving ones drift).
    pub final_obstacles: Vec<Obstacle>,
    /// Smallest surface-to-surface distance to any active obstacle seen
    /// during the run; `None` when no obstacle was ever active.
    pub min_clearance: Option<f64>,
}

impl TrajectoryLog {
    /// The plan that was active at time `t`.
    pub fn plan_at(&self, t: f64) -> &PlannedPath {
        let mut active = &self.plans[0];
        for p in &self.plans {
            if p.created_at <= t + 1e-12 {
                active = p;
            } else {
                break;
            }
        }
        active
    }

    pub fn replan_times(&self) -> Vec<f64> {
        self.events
            .iter()
            .filter_map(|e| match e {
                SimEvent::Replan { t } => Some(*t),
                _ => None,
            })
            .collect()
    }

    /// Travelled path length (m), from the true poses.
    pub fn path_length(&self) -> f64 {
        self.ticks
            .windows(2)
            .map(|w| w[0].pose.position().distance(w[1].pose.position()))
            .sum()
    }

    /// CSV with the fixed [`CSV_HEADER`] layout; float formatting is the
    /// shortest round-trip form, so identical runs serialize byte-identically.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.ticks.len() * 96 + 64);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for k in &self.ticks {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                k.t,
                k.pose.x,
                k.pose.y,
                k.pose.theta,
                k.fused.x,
                k.fused.y,
                k.frame.front,
                k.frame.back,
                k.frame.left,
                k.frame.right,
                k.cmd.omega_left,
                k.cmd.omega_right,
                k.volts_left,
                k.volts_right,
                k.left.omega,
                k.right.omega
            )
            .expect("string write cannot fail");
        }
        out
    }
}
