use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Brushed DC motor constants. Torque `T = Kt·i`, back-emf `e = Ke·ω`,
/// rotor `J·ω̇ + b·ω = Kt·i`, armature `L·di/dt + R·i = V − Ke·ω`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct MotorParams {
    /// Torque constant (N·m/A).
    #[serde(rename = "kt_nm_per_a")]
    pub kt: f64,
    /// Back-emf constant (V·s/rad).
    #[serde(rename = "ke_v_s_per_rad")]
    pub ke: f64,
    /// Armature resistance (Ω).
    #[serde(rename = "resistance_ohm")]
    pub resistance: f64,
    /// Armature inductance (H).
    #[serde(rename = "inductance_h")]
    pub inductance: f64,
    /// Rotor inertia (kg·m²).
    #[serde(rename = "inertia_kg_m2")]
    pub inertia: f64,
    /// Viscous damping (N·m·s).
    #[serde(rename = "damping_n_m_s")]
    pub damping: f64,
}

impl Default for MotorParams {
    fn default() -> Self {
        Self {
            kt: 0.1,
            ke: 0.1,
            resistance: 1.0,
            inductance: 0.5,
            inertia: 0.01,
            damping: 0.1,
        }
    }
}

impl MotorParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, value) in [
            ("kt", self.kt),
            ("ke", self.ke),
            ("resistance", self.resistance),
            ("inductance", self.inductance),
            ("inertia", self.inertia),
            ("damping", self.damping),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::BadParameter { name, value });
            }
        }
        Ok(())
    }

    /// State matrix of `d/dt [ω, i]`.
    pub fn state_matrix(&self) -> [[f64; 2]; 2] {
        [
            [-self.damping / self.inertia, self.kt / self.inertia],
            [-self.ke / self.inductance, -self.resistance / self.inductance],
        ]
    }

    /// Steady-state shaft speed under constant voltage:
    /// `Kt·V / (R·b + Kt·Ke)`.
    pub fn steady_state_speed(&self, volts: f64) -> f64 {
        self.kt * volts / (self.resistance * self.damping + self.kt * self.ke)
    }

    /// Voltage that holds a given shaft speed at equilibrium:
    /// `(R·b/Kt + Ke)·ω`.
    pub fn holding_voltage(&self, omega: f64) -> f64 {
        (self.resistance * self.damping / self.kt + self.ke) * omega
    }

    /// Largest eigenvalue magnitude of the state matrix; the RK4 step must
    /// stay well under the ~2.78/|λ| stability bound.
    pub fn spectral_bound(&self) -> f64 {
        let m = self.state_matrix();
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = tr * tr - 4.0 * det;
        if disc >= 0.0 {
            let s = disc.sqrt();
            (0.5 * (tr + s)).abs().max((0.5 * (tr - s)).abs())
        } else {
            // complex pair: |λ|² = det
            det.abs().sqrt()
        }
    }
}

/// Electromechanical state of one wheel motor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MotorState {
    /// Shaft speed ω (rad/s).
    pub omega: f64,
    /// Armature current i (A).
    pub current: f64,
}

impl MotorState {
    pub fn new(omega: f64, current: f64) -> Self {
        Self { omega, current }
    }

    pub fn kinetic_energy(&self, params: &MotorParams) -> f64 {
        0.5 * params.inertia * self.omega * self.omega
    }
}

fn derivative(s: MotorState, volts: f64, p: &MotorParams) -> MotorState {
    MotorState {
        omega: (-p.damping * s.omega + p.kt * s.current) / p.inertia,
        current: (volts - p.ke * s.omega - p.resistance * s.current) / p.inductance,
    }
}

fn axpy(s: MotorState, d: MotorState, h: f64) -> MotorState {
    MotorState {
        omega: s.omega + h * d.omega,
        current: s.current + h * d.current,
    }
}

/// One classical 4th-order Runge–Kutta step under constant voltage.
pub fn motor_step(
    s: &MotorState,
    volts: f64,
    params: &MotorParams,
    dt: f64,
) -> Result<MotorState, ModelError> {
    debug_assert!(dt > 0.0);
    let k1 = derivative(*s, volts, params);
    let k2 = derivative(axpy(*s, k1, 0.5 * dt), volts, params);
    let k3 = derivative(axpy(*s, k2, 0.5 * dt), volts, params);
    let k4 = derivative(axpy(*s, k3, dt), volts, params);
    let next = MotorState {
        omega: s.omega + dt / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega),
        current: s.current
            + dt / 6.0 * (k1.current + 2.0 * k2.current + 2.0 * k3.current + k4.current),
    };
    if !(next.omega.is_finite() && next.current.is_finite()) {
        return Err(ModelError::Diverged);
    }
    Ok(next)
}
