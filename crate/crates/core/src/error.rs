use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("{what} exceeds the bound of {limit} (got {got})")]
    BoundExceeded {
        what: &'static str,
        limit: u128,
        got: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group is not an automorphism group of the graph: {0} is not an automorphism")]
    NotAutomorphismGroup(String),

    #[error("top group contains an odd permutation")]
    OddPermutationInH,

    #[error("expected a reciprocal pair: {0}")]
    NotReciprocal(String),
}

impl Error {
    /// Whether the error reports a size bound rather than malformed input.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
