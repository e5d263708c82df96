use serde::{Deserialize, Serialize};

use super::error::FuzzyError;

/// A piecewise-linear fuzzy set over a crisp universe.
///
/// Shoulder kinds carry an implicit plateau that extends to the owning
/// variable's universe edge; the breakpoints only describe the ramp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum MembershipFunction {
    /// Ramp up from `a` to a peak at `b`, back down to zero at `c`.
    Triangle(f64, f64, f64),
    /// Ramp up over `[a, b]`, plateau over `[b, c]`, ramp down over `[c, d]`.
    Trapezoid(f64, f64, f64, f64),
    /// Plateau at 1 for `x <= a`, ramp down to zero at `b`.
    LeftShoulder(f64, f64),
    /// Zero for `x <= a`, ramp up to a plateau at 1 from `b` onward.
    RightShoulder(f64, f64),
}

impl MembershipFunction {
    pub fn triangle(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        Self::Triangle(a, b, c).validated()
    }

    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        Self::Trapezoid(a, b, c, d).validated()
    }

    pub fn left_shoulder(a: f64, b: f64) -> Result<Self, FuzzyError> {
        Self::LeftShoulder(a, b).validated()
    }

    pub fn right_shoulder(a: f64, b: f64) -> Result<Self, FuzzyError> {
        Self::RightShoulder(a, b).validated()
    }

    /// Checks finiteness and non-decreasing breakpoints. Malformed shapes are
    /// rejected here, never at evaluation time.
    pub fn validated(self) -> Result<Self, FuzzyError> {
        let pts = self.breakpoints();
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(FuzzyError::MalformedMembership {
                detail: format!("non-finite breakpoint in {pts:?}"),
            });
        }
        if pts.windows(2).any(|w| w[0] > w[1]) {
            return Err(FuzzyError::MalformedMembership {
                detail: format!("breakpoints must be non-decreasing, got {pts:?}"),
            });
        }
        // A fully degenerate ramp can never reach degree 1.
        let degenerate = match self {
            Self::Triangle(a, _, c) => a == c,
            Self::Trapezoid(a, _, _, d) => a == d,
            Self::LeftShoulder(a, b) | Self::RightShoulder(a, b) => a == b,
        };
        if degenerate && !matches!(self, Self::Triangle(..) | Self::Trapezoid(..)) {
            return Err(FuzzyError::MalformedMembership {
                detail: format!("zero-width shoulder ramp {pts:?}"),
            });
        }
        Ok(self)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Self::Triangle(a, b, c) => vec![a, b, c],
            Self::Trapezoid(a, b, c, d) => vec![a, b, c, d],
            Self::LeftShoulder(a, b) | Self::RightShoulder(a, b) => vec![a, b],
        }
    }

    /// Membership degree at `x`, always in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        match *self {
            Self::Triangle(a, b, c) => {
                if x < a || x > c {
                    0.0
                } else if x < b {
                    ramp_up(x, a, b)
                } else if x > b {
                    ramp_down(x, b, c)
                } else {
                    1.0
                }
            }
            Self::Trapezoid(a, b, c, d) => {
                if x < a || x > d {
                    0.0
                } else if x < b {
                    ramp_up(x, a, b)
                } else if x > c {
                    ramp_down(x, c, d)
                } else {
                    1.0
                }
            }
            Self::LeftShoulder(a, b) => {
                if x <= a {
                    1.0
                } else if x >= b {
                    0.0
                } else {
                    ramp_down(x, a, b)
                }
            }
            Self::RightShoulder(a, b) => {
                if x <= a {
                    0.0
                } else if x >= b {
                    1.0
                } else {
                    ramp_up(x, a, b)
                }
            }
        }
    }

    /// Interval outside of which the degree is zero, given the universe the
    /// set lives in (shoulder plateaus run to the universe edge).
    pub fn support(&self, universe: (f64, f64)) -> (f64, f64) {
        match *self {
            Self::Triangle(a, _, c) => (a, c),
            Self::Trapezoid(a, _, _, d) => (a, d),
            Self::LeftShoulder(_, b) => (universe.0, b),
            Self::RightShoulder(a, _) => (a, universe.1),
        }
    }

    /// Abscissa where the degree reaches 1 (plateau midpoint for trapezoids).
    pub fn peak(&self) -> f64 {
        match *self {
            Self::Triangle(_, b, _) => b,
            Self::Trapezoid(_, b, c, _) => 0.5 * (b + c),
            Self::LeftShoulder(a, _) => a,
            Self::RightShoulder(_, b) => b,
        }
    }
}

fn ramp_up(x: f64, a: f64, b: f64) -> f64 {
    if b == a {
        1.0
    } else {
        ((x - a) / (b - a)).clamp(0.0, 1.0)
    }
}

fn ramp_down(x: f64, a: f64, b: f64) -> f64 {
    if b == a {
        1.0
    } else {
        ((b - x) / (b - a)).clamp(0.0, 1.0)
    }
}
