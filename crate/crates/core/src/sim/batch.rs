use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{compute_metrics, Metrics};
use super::runner::run_scenario;
use super::scenario::Scenario;

/// Outcome of one seed in a batch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchRow {
    pub seed: u64,
    pub result: Result<Metrics, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchSummary {
    pub runs: usize,
    pub reached: usize,
    pub collisions: usize,
    pub timeouts: usize,
    pub failures: usize,
    pub reach_rate: f64,
    pub collision_rate: f64,
    /// Mean over the runs that reached the goal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_time_to_goal_s: Option<f64>,
    pub rows: Vec<BatchRow>,
}

/// Runs seeds `base_seed..base_seed + n`, each on its own copy of the
/// scenario (seed-derived worlds regenerate per run). Rows come back in
/// seed order regardless of scheduling, so serial and parallel execution
/// aggregate identically.
pub fn run_batch(scenario: &Scenario, base_seed: u64, n: usize, threads: Option<usize>) -> BatchSummary {
    let run_one = |i: usize| -> BatchRow {
        let mut s = scenario.clone();
        s.seed = base_seed + i as u64;
        let seed = s.seed;
        let result = run_scenario(&s)
            .map(|log| compute_metrics(&log, None))
            .map_err(|e| e.to_string());
        BatchRow { seed, result }
    };

    let rows: Vec<BatchRow> = match threads {
        Some(1) => (0..n).map(run_one).collect(),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool");
            pool.install(|| (0..n).into_par_iter().map(run_one).collect())
        }
        None => (0..n).into_par_iter().map(run_one).collect(),
    };

    summarize(rows)
}

fn summarize(rows: Vec<BatchRow>) -> BatchSummary {
    let runs = rows.len();
    let mut reached = 0;
    let mut collisions = 0;
    let mut timeouts = 0;
    let mut failures = 0;
    let mut goal_time_sum = 0.0;
    for row in &rows {
        match &row.result {
            Ok(m) => match m.status.as_str() {
                "goal_reached" => {
                    reached += 1;
                    goal_time_sum += m.time_to_goal_s.unwrap_or(0.0);
                }
                "collision" => collisions += 1,
                _ => timeouts += 1,
            },
            Err(_) => failures += 1,
        }
    }
    BatchSummary {
        runs,
        reached,
        collisions,
        timeouts,
        failures,
        reach_rate: reached as f64 / runs.max(1) as f64,
        collision_rate: collisions as f64 / runs.max(1) as f64,
        mean_time_to_goal_s: (reached > 0).then(|| goal_time_sum / reached as f64),
        rows,
    }
}

impl BatchSummary {
    /// Per-seed CSV table, deterministic formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "seed,status,time_to_goal_s,path_length_m,final_distance_m,min_clearance_m,tracking_mean_m,tracking_max_m,collisions,replans\n",
        );
        for row in &self.rows {
            match &row.result {
                Ok(m) => writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    row.seed,
                    m.status,
                    m.time_to_goal_s.map_or(String::new(), |v| v.to_string()),
                    m.path_length_m,
                    m.final_distance_m,
                    m.min_obstacle_clearance_m
                        .map_or(String::new(), |v| v.to_string()),
                    m.tracking_error_mean_m,
                    m.tracking_error_max_m,
                    m.collision_count,
                    m.replan_count
                )
                .expect("string write"),
                Err(e) => writeln!(out, "{},error,,,,,,,,\"{}\"", row.seed, e.replace('"', "'"))
                    .expect("string write"),
            }
        }
        out
    }
}
