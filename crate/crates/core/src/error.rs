//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the algebraic layers.
///
/// The CLI maps `is_input_error` variants to exit code 2 (bad input) and
/// everything else to exit code 1 (a verification that should have passed
/// did not).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} too large (must be < 2^31)")]
    ModulusTooLarge(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: |lambda| = {0} but |mu| = {1}")]
    SizeMismatch(u64, u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrices do not satisfy the Coxeter relations: {0}")]
    CoxeterRelation(String),

    #[error("matrix is not equivariant for generator s_{0}")]
    NotEquivariant(usize),

    #[error("homomorphism is not injective (rank {rank} < source dimension {dim})")]
    NotInjective { rank: usize, dim: usize },

    #[error("generator action does not preserve the subspace (s_{0})")]
    ActionNotPreserved(usize),

    #[error("degree {0} out of range (cap {1})")]
    DegreeOutOfRange(usize, usize),

    #[error("dimension {0} does not match any symmetric-power degree of the context")]
    NoMatchingDegree(usize),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("operator does not act as a scalar on degree {0}")]
    NotScalar(usize),
}

impl Error {
    /// True for errors caused by bad input or violated preconditions,
    /// as opposed to a failed verification of a claimed identity.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::ModulusTooLarge(_)
                | Error::ShapeMismatch(_)
                | Error::InvalidPartition(_)
                | Error::SizeMismatch(_, _)
                | Error::Precondition(_)
                | Error::DegreeOutOfRange(_, _)
                | Error::NoMatchingDegree(_)
        )
    }
}
