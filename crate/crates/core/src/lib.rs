//! Two-qubit entanglement measures for entangled coherent states.
//!
//! The crate provides:
//!
//! - [`qlinalg`]: 4×4 complex Hermitian linear algebra (cyclic Jacobi
//!   eigensolver, PSD square root, spin-flip operations);
//! - [`states`]: pure two-qubit states, SU(2) coherent states, the
//!   entangled-coherent-state parameterization, densities and ensemble
//!   decompositions;
//! - [`measures`]: pure-state concurrence, binary entropy, entanglement of
//!   formation, the closed-form mixed-state concurrence, and the amplitude
//!   form of the coherent-state concurrence;
//! - [`rank3`]: the simplified concurrence-squared formula for rank-3
//!   mixtures, its bounds, and the real-amplitude case classification;
//! - [`convex_roof`]: a numerical convex-roof minimizer used as an
//!   independent oracle for the closed forms;
//! - [`schema`]: the serde types of the JSON state-description format.

pub mod convex_roof;
pub mod error;
pub mod measures;
pub mod qlinalg;
pub mod rank3;
pub mod schema;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use measures::{
    amplitude_concurrence, binary_entropy, complex_concurrence_pure, concurrence_pure,
    entanglement_of_formation, wootters_concurrence, MeasureValue, WoottersSpectrum,
};
pub use qlinalg::{
    herm_eigensystem, matrix_sqrt_psd, spin_flip_density, spin_flip_pure, CMatrix4,
    HermEigenSystem,
};
pub use rank3::{
    case_d_concurrence, classify_real_case, concurrence_bounds, concurrence_squared_rank3,
    pairwise_complex_concurrences, quartet_states, reduced_symmetric_concurrence, CaseLabel,
    PairwiseConcurrences, Rank3Result, SymmetricCaseParams, TripleMixture,
};
pub use convex_roof::{
    convex_roof_concurrence, decomposition_from_unitary, random_density, RoofConfig, RoofResult,
};
pub use states::{
    density_from_decomposition, eigendecompose_density, entangled_coherent_pure, make_pure,
    su2_coherent_qubit, su2_coherent_spin_j, werner_state, CoherentPairSpec, Decomposition,
    DensityMatrix4, PureTwoQubit, SpinJCoherent,
};
