use thiserror::Error;

use crate::network::NetworkError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Network(#[from] NetworkError),

    #[error("state space too large: {variables} variables exceeds the cap of {cap}")]
    StateSpaceTooLarge { variables: usize, cap: usize },

    #[error("vertex {vertex} is outside the variable universe of size {universe}")]
    VertexOutOfRange { vertex: usize, universe: usize },

    #[error("arc {from} -> {to} leaves the vertex set")]
    ArcOutsideVertexSet { from: usize, to: usize },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("assignment must cover exactly the pinned variables")]
    AssignmentDomain,

    #[error("constraint `{label}` has no candidates, the hitting-set instance is infeasible")]
    EmptyConstraint { label: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::StateSpaceTooLarge`] when `variables > cap`.
pub(crate) fn check_state_cap(variables: usize, cap: usize) -> Result<()> {
    // Exhaustive code paths encode states in a u64 and masks in u64 words.
    let cap = cap.min(crate::MAX_EXHAUSTIVE_VARIABLES);
    if variables > cap {
        Err(Error::StateSpaceTooLarge { variables, cap })
    } else {
        Ok(())
    }
}
