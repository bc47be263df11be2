//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Eigensolver input failed the Hermiticity gate.
    #[error("matrix is not Hermitian within tolerance")]
    NonHermitianInput,

    /// Cyclic Jacobi did not reduce the off-diagonal norm within the sweep cap.
    #[error("Jacobi eigensolver failed to converge within {0} sweeps")]
    ConvergenceFailure(usize),

    /// A matrix expected to be positive semidefinite has a genuinely negative
    /// eigenvalue (beyond the round-off clamp).
    #[error("matrix has a negative eigenvalue {0:.3e} beyond round-off")]
    NegativeSpectrum(f64),

    /// A raw state vector was too short to normalize.
    #[error("state vector has (near-)zero norm")]
    ZeroState,

    /// Requested spin exceeds the supported cap.
    #[error("spin 2j = {0} exceeds the supported cap")]
    SpinTooLarge(u32),

    /// NaN or infinity in constructor input.
    #[error("non-finite component in input")]
    NonFiniteInput,

    /// Ensemble weights/states violate the decomposition invariants.
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    /// Matrix fails the density-matrix invariants (Hermitian, unit trace, PSD).
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// Argument outside the mathematical domain of a function.
    #[error("value {0} outside the domain of {1}")]
    DomainError(f64, &'static str),

    /// An internal numerical invariant was broken; indicates a bug or a
    /// corrupted input that slipped past validation.
    #[error("numerical invariant violated: {0}")]
    InvariantViolation(String),

    /// Convex-roof coefficient matrix columns are not orthonormal.
    #[error("coefficient matrix columns are not orthonormal")]
    NonOrthonormalCoefficients,

    /// An operation-specific precondition does not hold.
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
