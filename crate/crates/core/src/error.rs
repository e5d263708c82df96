use thiserror::Error;

use crate::fuzzy::FuzzyError;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter '{name}' out of range: {value}")]
    BadParameter { name: &'static str, value: f64 },

    #[error("integration diverged to a non-finite state")]
    Diverged,
}

#[derive(Debug, Error)]
pub enum NavError {
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),

    #[error("navigation engine failed validation: {gaps} gap(s), {conflicts} conflict(s)")]
    EngineInvalid { gaps: usize, conflicts: usize },

    #[error("goal lies inside an inflated obstacle; unreachable")]
    UnreachableGoal,

    #[error("planner needs distinct start and goal")]
    DegeneratePlan,

    #[error("bad navigator config: {detail}")]
    BadConfig { detail: String },
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario: {detail}")]
    InvalidScenario { detail: String },

    #[error("scenario parse error: {detail}")]
    Parse { detail: String },

    #[error(transparent)]
    Nav(#[from] NavError),

    #[error(transparent)]
    Model(#[from] ModelError),
}
