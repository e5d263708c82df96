use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{ultrasonic_scan, Obstacle, SensorFrame};
use crate::geom::Vec2;
use crate::model::{wrap_angle, Pose};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct SensorConfig {
    /// Ultrasonic ceiling (m).
    pub max_range_m: f64,
    /// Per-axis GPS noise std (m).
    pub gps_sigma_m: f64,
    /// Seconds between GPS fixes; the last fix is held in between.
    pub gps_period_s: f64,
    /// Compass noise std (rad).
    pub compass_sigma_rad: f64,
}

impl Default for SensorConfig {
    fn default() -> Self {
        Self {
            max_range_m: 4.0,
            gps_sigma_m: 2.0,
            gps_period_s: 1.0,
            compass_sigma_rad: 0.0,
        }
    }
}

/// A true position plus independent zero-mean Gaussian noise per axis, drawn
/// from the given stream.
pub fn gps_read<R: Rng>(true_pose: &Pose, sigma: f64, rng: &mut R) -> Vec2 {
    debug_assert!(sigma >= 0.0);
    if sigma == 0.0 {
        // keep the stream aligned whether or not noise is enabled
        let _ = rng.gen::<(f64, f64)>();
        return true_pose.position();
    }
    let normal = Normal::new(0.0, sigma).expect("sigma validated");
    Vec2::new(
        true_pose.x + normal.sample(rng),
        true_pose.y + normal.sample(rng),
    )
}

/// The full simulated sensor suite. All randomness flows from the seed it
/// was constructed with; identical seeds give identical frame sequences.
#[derive(Debug, Clone)]
pub struct SensorRig {
    pub config: SensorConfig,
    gps_rng: ChaCha8Rng,
    compass_rng: ChaCha8Rng,
    held_gps: Option<Vec2>,
    next_fix_at: f64,
}

impl SensorRig {
    pub fn new(config: SensorConfig, seed: u64) -> Self {
        let mut gps_rng = ChaCha8Rng::seed_from_u64(seed);
        gps_rng.set_stream(1);
        let mut compass_rng = ChaCha8Rng::seed_from_u64(seed);
        compass_rng.set_stream(2);
        Self {
            config,
            gps_rng,
            compass_rng,
            held_gps: None,
            next_fix_at: 0.0,
        }
    }

    /// Produces the snapshot for time `t`, refreshing the GPS fix when its
    /// period has elapsed.
    pub fn sense(&mut self, true_pose: &Pose, world: &[Obstacle], t: f64) -> SensorFrame {
        if self.held_gps.is_none() || t + 1e-12 >= self.next_fix_at {
            self.held_gps = Some(gps_read(true_pose, self.config.gps_sigma_m, &mut self.gps_rng));
            self.next_fix_at = t + self.config.gps_period_s;
        }
        let heading = if self.config.compass_sigma_rad > 0.0 {
            let n = Normal::new(0.0, self.config.compass_sigma_rad).expect("sigma validated");
            wrap_angle(true_pose.theta + n.sample(&mut self.compass_rng))
        } else {
            true_pose.theta
        };
        let [front, back, left, right] = ultrasonic_scan(true_pose, world, self.config.max_range_m);
        SensorFrame {
            front,
            back,
            left,
            right,
            gps: self.held_gps.expect("fix taken above"),
            heading,
            timestamp: t,
        }
    }
}
