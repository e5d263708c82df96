use thiserror::Error;

#[derive(Debug, Error)]
pub enum FuzzyError {
    #[error("malformed membership function: {detail}")]
    MalformedMembership { detail: String },

    #[error("invalid linguistic variable '{variable}': {detail}")]
    InvalidVariable { variable: String, detail: String },

    #[error("unknown variable '{variable}'")]
    UnknownVariable { variable: String },

    #[error("unknown term '{term}' on variable '{variable}'")]
    UnknownTerm { variable: String, term: String },

    #[error("non-finite input for variable '{variable}'")]
    NonFiniteInput { variable: String },

    #[error("missing input for variable '{variable}'")]
    MissingInput { variable: String },

    #[error("no rule fired for output '{variable}'")]
    NoRuleFired { variable: String },

    #[error("clipped output '{variable}' has zero area; cannot take a centroid")]
    ZeroArea { variable: String },

    #[error("invalid rule base: {detail}")]
    InvalidRuleBase { detail: String },

    #[error("rule base validation failed: {gaps} gap(s), {conflicts} conflict(s)")]
    ValidationFailed { gaps: usize, conflicts: usize },

    #[error("bad engine document: {detail}")]
    BadDocument { detail: String },
}
