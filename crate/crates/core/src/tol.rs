//! Central numeric tolerances.
//!
//! Every threshold the crate relies on lives here so the trade-offs stay
//! visible in one place. Matrices handled by this crate are 4×4 with entries
//! of order one, so absolute tolerances are meaningful throughout.

/// Hermiticity gate on eigensolver input (max |m[i][j] − conj(m[j][i])|).
pub const HERMITICITY_INPUT: f64 = 1e-12;

/// Hermiticity / unit-trace / PSD slack accepted by [`crate::states::DensityMatrix4`].
/// Looser than [`HERMITICITY_INPUT`] because densities are often assembled
/// from many outer-product accumulations.
pub const DENSITY_SLACK: f64 = 1e-10;

/// Jacobi convergence floor: off-diagonal Frobenius norm relative to the
/// matrix scale. Near machine precision; 4×4 Jacobi converges quadratically
/// so the extra sweeps this costs are negligible.
pub const JACOBI_OFF: f64 = 1e-14;

/// Hard cap on Jacobi sweeps before [`crate::error::Error::ConvergenceFailure`].
pub const JACOBI_MAX_SWEEPS: usize = 200;

/// Eigenvalues of nominally PSD matrices above −EIG_CLAMP are treated as
/// round-off zeros and clamped to 0.
pub const EIG_CLAMP: f64 = 1e-10;

/// Eigenvalues below −EIG_HARD_NEGATIVE are genuinely negative and raise
/// [`crate::error::Error::NegativeSpectrum`] instead of being clamped.
pub const EIG_HARD_NEGATIVE: f64 = 1e-8;

/// Raw state vectors with norm below this cannot be normalized.
pub const ZERO_NORM: f64 = 1e-14;

/// Concurrence-type values may stray at most this far past [0, 1] before the
/// excursion is considered an invariant violation rather than round-off.
pub const CONCURRENCE_CLIP: f64 = 1e-9;

/// Ensemble weights below this are dropped from decompositions.
pub const WEIGHT_DROP: f64 = 1e-12;

/// Decomposition weights must sum to 1 within this.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Pairwise overlap threshold for the mixture orthogonality flag.
pub const ORTHOGONALITY: f64 = 1e-10;

/// A mixture counts as real for case classification when every amplitude has
/// |imaginary part| below this.
pub const REAL_GATE: f64 = 1e-12;

/// Slack applied to the case-classifier inequality comparisons so that exact
/// boundary instances (products that are analytically zero) classify stably.
pub const CASE_SLACK: f64 = 1e-12;

/// Equality tolerance for the case-C pairwise-sum conditions. The compared
/// quantities are order one; the slack propagates linearly into the
/// bound-equality gap, which must stay below [`BOUND_SLACK`].
pub const CASE_EQUALITY: f64 = 1e-10;

/// Threshold for reporting a bound violation (and for the hard upper-bound
/// assertion).
pub const BOUND_SLACK: f64 = 1e-10;

/// sin/cos magnitudes below this snap to exact zero, so quarter-turn angles
/// produce exact branch coefficients (the separability triggers must yield
/// concurrence 0 exactly, and no f64 angle has an exactly zero cosine).
pub const TRIG_SNAP: f64 = 1e-15;

/// Orthonormality gate for convex-roof coefficient matrices.
pub const COEFF_ORTHONORMALITY: f64 = 1e-10;

/// Largest supported 2j for SU(2) coherent spin states (desk-scale cap).
pub const SPIN_TWO_J_CAP: u32 = 20;

/// Component concurrences below this count as separable (case-D gating).
pub const SEPARABLE: f64 = 1e-12;
