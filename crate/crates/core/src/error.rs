use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("certificate/instance type mismatch")]
    CertificateMismatch,

    #[error("not a solution")]
    NotASolution,

    #[error("constraint blow-up: {needed} joint assignments exceed the cap of {cap}")]
    ConstraintBlowUp { needed: u128, cap: u128 },

    #[error("average-free set too small: universe needs {needed} elements, set has {have}")]
    AvgFreeTooSmall { needed: u64, have: usize },

    #[error("average-free order {have} is below the maximum variable degree {needed}")]
    AvgFreeOrderTooSmall { needed: usize, have: usize },

    #[error("bound too small: {0}")]
    BoundTooSmall(String),

    #[error("target too large for DP: {target} exceeds cap {cap}")]
    TargetTooLarge { target: String, cap: u64 },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("use randomized strategy: {colorings} colorings exceed the cap of {cap}")]
    TooManyColorings { colorings: u128, cap: u128 },

    #[error("graph is cyclic")]
    Cyclic,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("value {0} does not fit in 64 bits")]
    Overflow(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
