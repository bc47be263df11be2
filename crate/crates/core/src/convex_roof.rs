//! Numerical convex-roof concurrence via stochastic search over ensemble
//! decompositions.
//!
//! Every decomposition ρ = Σⱼ pⱼ|ψⱼ⟩⟨ψⱼ| arises from the spectral form
//! ρ = Σᵢ νᵢ|vᵢ⟩⟨vᵢ| through a left-unitary coefficient matrix u with
//! orthonormal columns: |w̃ⱼ⟩ = Σᵢ u*ⱼᵢ √νᵢ |vᵢ⟩, pⱼ = ⟨w̃ⱼ|w̃ⱼ⟩. The roof
//! value inf Σⱼ pⱼC(ψⱼ) is approached by randomized local descent over u
//! with multiple restarts. The result is an upper bound on the true roof;
//! for two qubits it can be checked against the closed-form mixed-state
//! concurrence.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measures::concurrence_pure;
use crate::qlinalg::C_ZERO;
use crate::states::{density_from_decomposition, make_pure, Decomposition, DensityMatrix4};
use crate::tol;

/// Search schedule for [`convex_roof_concurrence`].
#[derive(Clone, Copy, Debug)]
pub struct RoofConfig {
    /// Number of ensemble members m; `None` uses 2 × rank.
    pub ensemble_size: Option<usize>,
    /// Independent restarts. Restart 0 starts from the spectral
    /// decomposition; later restarts start from random coefficients.
    pub restarts: usize,
    /// Iterations per restart.
    pub iterations: usize,
    /// Initial perturbation scale, halved after 10 consecutive rejections.
    pub step_scale: f64,
    /// Improvement below this over a 50-iteration window counts as
    /// converged.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> RoofConfig {
        RoofConfig {
            ensemble_size: None,
            restarts: 64,
            iterations: 500,
            step_scale: 0.1,
            tolerance: 1e-4,
            seed: 7,
        }
    }
}

/// Outcome of the roof search. `converged` and `iterations_used` describe
/// the restart that produced the best value.
#[derive(Clone, Debug)]
pub struct RoofResult {
    /// Best ensemble-averaged concurrence found (an upper bound on the
    /// convex roof).
    pub concurrence: f64,
    pub decomposition: Decomposition,
    pub iterations_used: usize,
    pub converged: bool,
    pub best_restart: usize,
}

/// Spectral data retained for the search: √νᵢ|vᵢ⟩ for νᵢ above the drop
/// threshold.
fn subnormalized_eigvecs(rho: &DensityMatrix4) -> Result<Vec<[Complex64; 4]>> {
    let eig = rho.eigensystem()?;
    let mut out = Vec::new();
    for (i, &nu) in eig.eigenvalues.iter().enumerate() {
        if nu > tol::WEIGHT_DROP {
            let s = nu.sqrt();
            let mut v = eig.eigenvectors[i];
            for z in &mut v {
                *z *= s;
            }
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidDensity("spectrum is numerically zero".into()));
    }
    Ok(out)
}

/// Gram–Schmidt orthonormalization of the r columns of an m×r matrix
/// stored row-major. Returns false when a column degenerates.
fn orthonormalize_columns(u: &mut [Vec<Complex64>], r: usize) -> bool {
    let m = u.len();
    for i in 0..r {
        for prev in 0..i {
            let mut overlap = C_ZERO;
            for j in 0..m {
                overlap += u[j][prev].conj() * u[j][i];
            }
            for j in 0..m {
                let correction = overlap * u[j][prev];
                u[j][i] -= correction;
            }
        }
        let norm: f64 = u.iter().map(|row| row[i].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return false;
        }
        for row in u.iter_mut() {
            row[i] /= norm;
        }
    }
    true
}

/// Σⱼ pⱼC(ψⱼ) evaluated on unnormalized members: pC = 2|w̃₀w̃₃ − w̃₁w̃₂|.
fn ensemble_objective(u: &[Vec<Complex64>], sub: &[[Complex64; 4]]) -> f64 {
    let mut total = 0.0;
    for row in u {
        let mut w = [C_ZERO; 4];
        for (i, s) in sub.iter().enumerate() {
            let coef = row[i].conj();
            for k in 0..4 {
                w[k] += coef * s[k];
            }
        }
        total += 2.0 * (w[0] * w[3] - w[1] * w[2]).norm();
    }
    total
}

fn column_orthonormality_defect(u: &[Vec<Complex64>], r: usize) -> f64 {
    let mut defect = 0.0_f64;
    for i in 0..r {
        for ip in i..r {
            let mut overlap = C_ZERO;
            for row in u {
                overlap += row[i].conj() * row[ip];
            }
            let target = if i == ip { 1.0 } else { 0.0 };
            defect = defect.max((overlap - Complex64::new(target, 0.0)).norm());
        }
    }
    defect
}

/// Materialize the decomposition selected by a coefficient matrix.
///
/// `coefficients` must be m×r with orthonormal columns, r being the number
/// of retained eigenvalues of ρ; members whose weight falls below
/// [`tol::WEIGHT_DROP`] are dropped.
pub fn decomposition_from_unitary(
    rho: &DensityMatrix4,
    coefficients: &[Vec<Complex64>],
) -> Result<Decomposition> {
    let sub = subnormalized_eigvecs(rho)?;
    let r = sub.len();
    if coefficients.len() < r || coefficients.iter().any(|row| row.len() != r) {
        return Err(Error::PreconditionFailed(
            "coefficient matrix must be m x r with m >= rank",
        ));
    }
    if column_orthonormality_defect(coefficients, r) > tol::COEFF_ORTHONORMALITY {
        return Err(Error::NonOrthonormalCoefficients);
    }

    let mut weights = Vec::new();
    let mut states = Vec::new();
    for row in coefficients {
        let mut w = [C_ZERO; 4];
        for (i, s) in sub.iter().enumerate() {
            let coef = row[i].conj();
            for k in 0..4 {
                w[k] += coef * s[k];
            }
        }
        let weight: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if weight > tol::WEIGHT_DROP {
            weights.push(weight);
            states.push(make_pure(w)?);
        }
    }
    Decomposition::new(weights, states)
}

struct RestartOutcome {
    objective: f64,
    coefficients: Vec<Vec<Complex64>>,
    iterations_used: usize,
    converged: bool,
}

fn run_restart(
    sub: &[[Complex64; 4]],
    m: usize,
    restart: usize,
    config: &RoofConfig,
) -> RestartOutcome {
    let r = sub.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);

    let mut u: Vec<Vec<Complex64>> = if restart == 0 {
        // Identity embedding: member j = eigenvector j, the spectral
        // decomposition itself.
        (0..m)
            .map(|j| {
                (0..r)
                    .map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect()
    } else {
        loop {
            let mut candidate: Vec<Vec<Complex64>> = (0..m)
                .map(|_| {
                    (0..r)
                        .map(|_| {
                            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                        })
                        .collect()
                })
                .collect();
            if orthonormalize_columns(&mut candidate, r) {
                break candidate;
            }
        }
    };

    let mut best = ensemble_objective(&u, sub);
    let mut step = config.step_scale;
    let mut rejections = 0_u32;
    let mut window_mark = 0_usize;
    let mut window_best = best;
    let mut converged = false;
    let mut iterations_used = config.iterations;

    for iter in 0..config.iterations {
        let mut candidate = u.clone();
        for row in &mut candidate {
            for z in row.iter_mut() {
                *z += step
                    * Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
        }
        if !orthonormalize_columns(&mut candidate, r) {
            rejections += 1;
        } else {
            let value = ensemble_objective(&candidate, sub);
            if value < best {
                best = value;
                u = candidate;
                rejections = 0;
            } else {
                rejections += 1;
            }
        }
        if rejections >= 10 {
            step = (step * 0.5).max(config.step_scale * 1e-4);
            rejections = 0;
        }
        if iter - window_mark >= 50 {
            if window_best - best < config.tolerance {
                converged = true;
                iterations_used = iter + 1;
                break;
            }
            window_mark = iter;
            window_best = best;
        }
    }

    RestartOutcome {
        objective: best,
        coefficients: u,
        iterations_used,
        converged,
    }
}

/// Minimize the ensemble-averaged concurrence over decompositions of ρ.
///
/// Deterministic for a fixed configuration: restart k draws from an
/// independent stream of the seeded generator, and the best restart (ties
/// to the lowest index) supplies the result.
pub fn convex_roof_concurrence(rho: &DensityMatrix4, config: &RoofConfig) -> Result<RoofResult> {
    if config.restarts == 0 || config.iterations == 0 {
        return Err(Error::PreconditionFailed(
            "roof search needs at least one restart and one iteration",
        ));
    }
    if !(config.step_scale.is_finite() && config.step_scale > 0.0)
        || !(config.tolerance.is_finite() && config.tolerance > 0.0)
    {
        return Err(Error::PreconditionFailed(
            "step scale and tolerance must be positive and finite",
        ));
    }
    let sub = subnormalized_eigvecs(rho)?;
    let r = sub.len();
    let m = config.ensemble_size.unwrap_or(2 * r).max(r);

    let mut best: Option<(RestartOutcome, usize)> = None;
    for restart in 0..config.restarts {
        let outcome = run_restart(&sub, m, restart, config);
        let better = match &best {
            None => true,
            Some((current, _)) => outcome.objective < current.objective,
        };
        if better {
            best = Some((outcome, restart));
        }
    }
    let (outcome, best_restart) = best.unwrap();

    let decomposition = decomposition_from_unitary(rho, &outcome.coefficients)?;
    let concurrence = decomposition
        .weights
        .iter()
        .zip(&decomposition.states)
        .map(|(p, s)| p * concurrence_pure(s))
        .sum();

    Ok(RoofResult {
        concurrence,
        decomposition,
        iterations_used: outcome.iterations_used,
        converged: outcome.converged,
        best_restart,
    })
}

/// Random density matrix of prescribed rank (1..=4): Haar-like random pure
/// states mixed with flat Dirichlet weights, resampled until the spectrum
/// has exactly `rank` eigenvalues above 1e-6.
pub fn random_density(rank: usize, seed: u64) -> Result<DensityMatrix4> {
    if !(1..=4).contains(&rank) {
        return Err(Error::PreconditionFailed("rank must be between 1 and 4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut weights = Vec::with_capacity(rank);
        let mut states = Vec::with_capacity(rank);
        for _ in 0..rank {
            let raw = [
                Complex64::new(sample_gauss(&mut rng), sample_gauss(&mut rng)),
                Complex64::new(sample_gauss(&mut rng), sample_gauss(&mut rng)),
                Complex64::new(sample_gauss(&mut rng), sample_gauss(&mut rng)),
                Complex64::new(sample_gauss(&mut rng), sample_gauss(&mut rng)),
            ];
            states.push(make_pure(raw)?);
            weights.push(-rng.gen::<f64>().ln());
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let rho = density_from_decomposition(&Decomposition::new(weights, states)?)?;
        let eig = rho.eigensystem()?;
        let effective = eig.eigenvalues.iter().filter(|&&nu| nu > 1e-6).count();
        if effective == rank {
            return Ok(rho);
        }
    }
}

fn sample_gauss(rng: &mut ChaCha8Rng) -> f64 {
    use rand_distr::{Distribution, StandardNormal};
    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng)
}
