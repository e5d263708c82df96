mod common;
use fuzznav::sim::{run_scenario, tracking_series, ObstacleSpec};

#[test]
fn probe_baseline_tracking() {
    let mut s = common::empty_scenario([15.0, 0.0]);
    s.duration_s = 60.0;
    s.sensors.gps_sigma_m = 0.5;
    let log = run_scenario(&s).unwrap();
    let series = tracking_series(&log);
    let mean = series.iter().map(|(_, e)| e).sum::<f64>() / series.len() as f64;
    let max = series.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    println!("baseline: status {:?} mean TE {mean:.3} max TE {max:.3} replans {}", log.status, log.replan_times().len());
}

#[test]
fn probe_replan_spikes() {
    let mut s = common::empty_scenario([15.0, 0.0]);
    s.duration_s = 60.0;
    s.sensors.gps_sigma_m = 0.5;
    // force a replan: obstacle dropped onto the corridor ahead mid-run
    s.world.obstacles = vec![ObstacleSpec {
        center_m: [8.0, 0.0], radius_m: 0.9, velocity_m_s: [0.0, 0.0],
        spawn_s: 3.0, despawn_s: None, bounce: false,
    }];
    let log = run_scenario(&s).unwrap();
    let series = tracking_series(&log);
    let replans = log.replan_times();
    println!("forced: status {:?} replans {:?}", log.status, replans);
    let max = series.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    println!("max TE {max:.3}");
    // spike clusters above 0.3
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for &(t, e) in &series {
        if e > 0.1 {
            open = Some(open.map_or((t, t), |(a, _)| (a, t)));
        } else if let Some(c) = open.take() {
            clusters.push(c);
        }
    }
    if let Some(c) = open { clusters.push(c); }
    println!("spike clusters: {clusters:?}");
    for (start, _) in &clusters {
        let near = replans.iter().any(|r| (r - start).abs() <= 1.0);
        println!("  cluster at {start:.2}: near replan = {near}");
    }
}
