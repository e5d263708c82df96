use super::log::{SimEvent, Status, Tick, TrajectoryLog};
use super::scenario::Scenario;
use crate::error::SimError;
use crate::model::{robot_step, MotorState};
use crate::nav::{build_navigation_engine, speed_to_voltage, EngineSpec, Navigator, WheelCommand};
use crate::sensors::{encoder_update, Obstacle, OdometryState, SensorRig};

/// Obstacle field with constant-velocity motion and optional bouncing off
/// the world bounds.
struct World {
    obstacles: Vec<Obstacle>,
    bounds: [[f64; 2]; 2],
    /// Scratch: obstacles active at the current time.
    active: Vec<Obstacle>,
}

impl World {
    fn advance(&mut self, dt: f64) {
        let [[min_x, min_y], [max_x, max_y]] = self.bounds;
        for o in &mut self.obstacles {
            if !o.is_moving() {
                continue;
            }
            o.center = o.center + o.velocity * dt;
            if o.bounce {
                if (o.center.x - o.radius < min_x && o.velocity.x < 0.0)
                    || (o.center.x + o.radius > max_x && o.velocity.x > 0.0)
                {
                    o.velocity.x = -o.velocity.x;
                }
                if (o.center.y - o.radius < min_y && o.velocity.y < 0.0)
                    || (o.center.y + o.radius > max_y && o.velocity.y > 0.0)
                {
                    o.velocity.y = -o.velocity.y;
                }
            }
        }
    }

    fn refresh_active(&mut self, t: f64) {
        self.active.clear();
        self.active
            .extend(self.obstacles.iter().filter(|o| o.active_at(t)).copied());
    }
}

/// Runs one scenario to termination on its fixed clock. Fully deterministic
/// from the scenario (seed included): the loop is
/// advance obstacles → sense → control → drive → step plant → check
/// collision/goal, with sensing and control at the configured control rate.
pub fn run_scenario(scenario: &Scenario) -> Result<TrajectoryLog, SimError> {
    scenario.validate()?;

    let chassis = scenario.robot.chassis;
    let motor = scenario.robot.motor;
    let tuning = scenario.controller.tuning;
    let footprint = scenario.robot.footprint_radius_m;
    let dt = scenario.dt_s;
    let goal = scenario.goal();
    let divisor = scenario.control_divisor();
    let steps = (scenario.duration_s / dt).round() as usize;

    let engine_spec = scenario
        .controller
        .engine
        .clone()
        .unwrap_or_else(EngineSpec::default);
    let engine = build_navigation_engine(&engine_spec)?;

    let mut world = World {
        obstacles: scenario.build_obstacles(),
        bounds: scenario.world.bounds_m,
        active: Vec::new(),
    };
    let initial_obstacles = world.obstacles.clone();
    world.refresh_active(0.0);

    let mut pose = scenario.start_pose();
    let mut odo = OdometryState::new(pose);
    let mut left = MotorState::default();
    let mut right = MotorState::default();
    let mut rig = SensorRig::new(scenario.sensors, scenario.seed);

    let mut navigator = Navigator::new(
        engine,
        tuning,
        footprint,
        pose.position(),
        goal,
        &world.active,
        0.0,
    )?;

    let mut ticks: Vec<Tick> = Vec::with_capacity(steps + 1);
    let mut events: Vec<SimEvent> = Vec::new();
    let mut plans = vec![navigator.plan().clone()];
    let mut alive: Vec<u32> = world.active.iter().map(|o| o.id).collect();
    let mut status = Status::Timeout;
    let mut cmd = WheelCommand::STOP;
    let mut frame = rig.sense(&pose, &world.active, 0.0);
    let mut min_clearance: Option<f64> = None;

    for step in 0..=steps {
        let t = step as f64 * dt;
        if step > 0 {
            world.advance(dt);
            world.refresh_active(t);
        }

        // spawn/despawn bookkeeping
        let now_alive: Vec<u32> = world.active.iter().map(|o| o.id).collect();
        for id in &now_alive {
            if !alive.contains(id) {
                events.push(SimEvent::Spawn { t, obstacle_id: *id });
            }
        }
        for id in &alive {
            if !now_alive.contains(id) {
                events.push(SimEvent::Despawn { t, obstacle_id: *id });
            }
        }
        alive = now_alive;

        if step % divisor == 0 {
            frame = rig.sense(&pose, &world.active, t);
            let fused = navigator.fused_position(&frame, &odo.pose);
            if navigator.maybe_replan(fused, &world.active, t) {
                events.push(SimEvent::Replan { t });
                plans.push(navigator.plan().clone());
            }
            cmd = navigator.control_step(&frame, &odo.pose);
        }

        let (volts_left, volts_right) =
            speed_to_voltage(&cmd, &left, &right, &motor, tuning.kp_speed, tuning.v_max_volts);
        let fused = navigator.fused_position(&frame, &odo.pose);
        ticks.push(Tick {
            t,
            pose,
            fused,
            frame,
            cmd,
            volts_left,
            volts_right,
            left,
            right,
        });

        // terminal checks on the state just logged
        let mut hit = None;
        for o in &world.active {
            let clearance = o.center.distance(pose.position()) - o.radius - footprint;
            if min_clearance.map_or(true, |m| clearance < m) {
                min_clearance = Some(clearance);
            }
            if clearance < 0.0 && hit.is_none() {
                hit = Some(o.id);
            }
        }
        if let Some(obstacle_id) = hit {
            status = Status::Collision { t, obstacle_id };
            break;
        }
        if pose.position().distance(goal) < scenario.goal_radius_m {
            status = Status::GoalReached { t };
            break;
        }
        if step == steps {
            break; // Timeout
        }

        let (next_pose, next_left, next_right) = robot_step(
            &pose,
            &left,
            &right,
            volts_left,
            volts_right,
            &chassis,
            &motor,
            dt,
        )?;
        odo = encoder_update(
            &odo,
            next_left.omega * dt,
            next_right.omega * dt,
            &chassis,
        );
        pose = next_pose;
        left = next_left;
        right = next_right;
    }

    Ok(TrajectoryLog {
        seed: scenario.seed,
        dt,
        goal,
        footprint_radius: footprint,
        ticks,
        status,
        plans,
        events,
        obstacles: initial_obstacles,
        final_obstacles: world.obstacles,
        min_clearance,
    })
}
