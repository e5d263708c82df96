//! Generic Mamdani fuzzy inference: fuzzification, min-AND rule firing,
//! max aggregation per consequent term, and area-weighted centroid
//! defuzzification. Nothing in here knows about robots.

mod centroid;
mod engine;
mod error;
mod membership;
mod rule;
mod schema;
mod variable;

pub use centroid::{clipped_area_moment, defuzzify_centroid};
pub use engine::{Engine, FuzzifiedInput};
pub use error::FuzzyError;
pub use membership::MembershipFunction;
pub use rule::{Rule, RuleBase, ValidationReport};
pub use schema::{engine_from_json, EngineDoc, TermDoc, VariableDoc};
pub use variable::LinguisticVariable;
