//! Entanglement measures: concurrence (pure and mixed), binary entropy,
//! entanglement of formation, and the amplitude form of the concurrence for
//! entangled coherent states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{herm_eigensystem, matrix_sqrt_psd, spin_flip_density};
use crate::states::{CoherentPairSpec, DensityMatrix4, PureTwoQubit};
use crate::tol;

/// Clamp a concurrence-type value onto [0, 1], erroring on excursions larger
/// than [`tol::CONCURRENCE_CLIP`].
fn clip_unit(value: f64, what: &'static str) -> Result<f64> {
    if value < -tol::CONCURRENCE_CLIP || value > 1.0 + tol::CONCURRENCE_CLIP {
        return Err(Error::InvariantViolation(format!(
            "{what} = {value} strays outside [0, 1]"
        )));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Concurrence of a pure state: C = 2|ad − bc|.
///
/// The input is normalized by construction, so the value sits in [0, 1] up to
/// round-off; the boundary excess is clipped.
pub fn concurrence_pure(psi: &PureTwoQubit) -> f64 {
    complex_concurrence_pure(psi).norm().min(1.0)
}

/// Complex (phase-carrying) concurrence of a pure state: 2(ad − bc).
pub fn complex_concurrence_pure(psi: &PureTwoQubit) -> Complex64 {
    2.0 * (psi.a() * psi.d() - psi.b() * psi.c())
}

/// Binary entropy h(x) = −x log₂ x − (1−x) log₂(1−x).
///
/// Accepts x in [0, 1] with round-off slack [`tol::REAL_GATE`]; endpoints
/// evaluate to 0.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -tol::REAL_GATE || x > 1.0 + tol::REAL_GATE {
        return Err(Error::DomainError(x, "binary_entropy"));
    }
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Entanglement of formation as a function of concurrence:
/// E = h((1 + √(1 − C²))/2).
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !c.is_finite() || c < -tol::REAL_GATE || c > 1.0 + tol::REAL_GATE {
        return Err(Error::DomainError(c, "entanglement_of_formation"));
    }
    let c = c.clamp(0.0, 1.0);
    // 1 − c² can round slightly negative at c = 1.
    let root = (1.0 - c * c).max(0.0).sqrt();
    binary_entropy(0.5 * (1.0 + root))
}

/// Descending square roots λ₁ ≥ λ₂ ≥ λ₃ ≥ λ₄ of the eigenvalues of
/// √ρ ρ̃ √ρ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WoottersSpectrum {
    pub lambdas: [f64; 4],
}

/// Closed-form mixed-state concurrence
/// C(ρ) = max{λ₁ − λ₂ − λ₃ − λ₄, 0}.
///
/// The spectrum is computed from the Hermitian product √ρ ρ̃ √ρ, which has
/// the same eigenvalues as ρρ̃ but keeps the eigenproblem Hermitian.
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Result<(f64, WoottersSpectrum)> {
    let s = matrix_sqrt_psd(rho.matrix())?;
    let flipped = spin_flip_density(rho);
    let w = s * *flipped.matrix() * s;
    let w = (w + w.adjoint()) * 0.5;
    let eig = herm_eigensystem(&w)?;
    let mut lambdas = [0.0; 4];
    for k in 0..4 {
        let e = eig.eigenvalues[k];
        if e < -tol::EIG_CLAMP {
            return Err(Error::InvariantViolation(format!(
                "spin-flipped spectrum has eigenvalue {e:.3e}"
            )));
        }
        // Flush numerical zeros before the square root: keeping an O(1e-16)
        // noise eigenvalue would contribute O(1e-8) to the λ differences.
        lambdas[k] = if e > tol::EIG_CLAMP { e.sqrt() } else { 0.0 };
    }
    // Descending eigenvalues stay descending under sqrt.
    let c = clip_unit(
        (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0),
        "wootters concurrence",
    )?;
    Ok((c, WoottersSpectrum { lambdas }))
}

/// Concurrence of an entangled coherent state straight from its parameters:
/// C = 2|λγ/N · (α − α′)(β − β′)|.
///
/// Exact zeros in any factor (the separability triggers α = α′, β = β′,
/// λ = 0, γ = 0) propagate to an exact zero result.
pub fn amplitude_concurrence(spec: &CoherentPairSpec) -> Result<f64> {
    if spec.n_norm <= tol::ZERO_NORM {
        return Err(Error::ZeroState);
    }
    let product = spec.lambda_coef
        * spec.gamma_coef
        * (spec.alpha - spec.alpha_p)
        * (spec.beta - spec.beta_p);
    clip_unit(2.0 * product.norm() / spec.n_norm, "amplitude concurrence")
}

/// A concurrence together with its entanglement of formation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureValue {
    pub concurrence: f64,
    pub eof: f64,
}

impl MeasureValue {
    pub fn from_concurrence(c: f64) -> Result<MeasureValue> {
        Ok(MeasureValue {
            concurrence: c,
            eof: entanglement_of_formation(c)?,
        })
    }
}
