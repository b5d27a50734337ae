use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("generator {index} is not a bijection on 0..{degree}")]
    NotBijection { index: usize, degree: usize },

    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("outer class of the automorphism does not centralize the class of phi")]
    NotCentralizing,

    #[error("outer class of the automorphism does not conjugate phi to its inverse")]
    NotReversing,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("hypotheses violated: {0}")]
    HypothesisViolation(String),

    #[error("internal consistency check failed: {0}")]
    TheoremViolation(String),

    #[error("word length {len} exceeds budget {cap}")]
    WordTooLong { len: usize, cap: usize },
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
