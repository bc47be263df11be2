//! Two-qubit state construction: pure states, SU(2) coherent states,
//! entangled coherent superpositions, density matrices and ensemble
//! decompositions.
//!
//! Amplitude ordering is always (a, b, c, d) over |00⟩, |01⟩, |10⟩, |11⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{herm_eigensystem, CMatrix4, HermEigenSystem, C_ONE, C_ZERO};
use crate::tol;

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// sin/cos with magnitudes below [`tol::TRIG_SNAP`] flushed to exact zero.
///
/// No f64 angle has an exactly zero cosine (cos(π/2) ≈ 6.1e-17), yet the
/// separability triggers of the coherent-state family (λ = 0, γ = 0) must
/// produce concurrence 0 exactly. Snapping perturbs the coefficient by at
/// most 1e-15, far below every tolerance used elsewhere, and makes the
/// quarter-turn family exactly representable.
fn snapped_sin_cos(angle: f64) -> (f64, f64) {
    let (mut s, mut c) = angle.sin_cos();
    if s.abs() < tol::TRIG_SNAP {
        s = 0.0;
    }
    if c.abs() < tol::TRIG_SNAP {
        c = 0.0;
    }
    (s, c)
}

/// Normalized two-qubit pure state.
///
/// Invariants: amplitudes have unit norm; `norm` records the Euclidean norm
/// of the raw vector handed to [`make_pure`] (1.0 for states built from
/// already-normalized data).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureTwoQubit {
    pub amps: [Complex64; 4],
    pub norm: f64,
}

impl PureTwoQubit {
    /// Wrap amplitudes that are already unit-norm (norm recorded as 1).
    pub(crate) fn from_normalized(amps: [Complex64; 4]) -> Self {
        PureTwoQubit { amps, norm: 1.0 }
    }

    pub fn a(&self) -> Complex64 {
        self.amps[0]
    }
    pub fn b(&self) -> Complex64 {
        self.amps[1]
    }
    pub fn c(&self) -> Complex64 {
        self.amps[2]
    }
    pub fn d(&self) -> Complex64 {
        self.amps[3]
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureTwoQubit) -> Complex64 {
        (0..4).map(|k| self.amps[k].conj() * other.amps[k]).sum()
    }

    /// |ψ⟩⟨ψ|.
    pub fn projector(&self) -> CMatrix4 {
        CMatrix4::outer(&self.amps)
    }

    /// Computational basis state |00⟩, |01⟩, |10⟩ or |11⟩.
    pub fn basis(k: usize) -> Self {
        let mut amps = [C_ZERO; 4];
        amps[k] = C_ONE;
        PureTwoQubit::from_normalized(amps)
    }

    /// (|00⟩ + |11⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        PureTwoQubit::from_normalized([
            Complex64::new(r, 0.0),
            C_ZERO,
            C_ZERO,
            Complex64::new(r, 0.0),
        ])
    }

    /// (|01⟩ + |10⟩)/√2.
    pub fn bell_psi_plus() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        PureTwoQubit::from_normalized([
            C_ZERO,
            Complex64::new(r, 0.0),
            Complex64::new(r, 0.0),
            C_ZERO,
        ])
    }
}

/// Normalize raw amplitudes into a [`PureTwoQubit`].
pub fn make_pure(raw: [Complex64; 4]) -> Result<PureTwoQubit> {
    if raw.iter().any(|&z| !finite(z)) {
        return Err(Error::NonFiniteInput);
    }
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < tol::ZERO_NORM {
        return Err(Error::ZeroState);
    }
    Ok(PureTwoQubit {
        amps: raw.map(|z| z / norm),
        norm,
    })
}

/// Single-qubit SU(2) coherent state (cos θ/2, e^{iφ} sin θ/2).
pub fn su2_coherent_qubit(theta: f64, phi: f64) -> Result<[Complex64; 2]> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let (s, c) = snapped_sin_cos(0.5 * theta);
    let (sp, cp) = snapped_sin_cos(phi);
    Ok([Complex64::new(c, 0.0), Complex64::new(cp, sp) * s])
}

/// Spin-j SU(2) coherent state in the Dicke basis n = 0..2j.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinJCoherent {
    pub two_j: u32,
    pub gamma: Complex64,
    /// Amplitudes (1+|γ|²)^{−j} √(C(2j, n)) γⁿ; normalized by construction.
    pub amplitudes: Vec<Complex64>,
}

impl SpinJCoherent {
    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 1..=u64::from(k) {
        acc = acc * (u64::from(n - k) + i) / i;
    }
    acc
}

/// Spin-j SU(2) coherent state |j, γ⟩; 2j is capped at
/// [`tol::SPIN_TWO_J_CAP`].
pub fn su2_coherent_spin_j(gamma: Complex64, two_j: u32) -> Result<SpinJCoherent> {
    if two_j > tol::SPIN_TWO_J_CAP {
        return Err(Error::SpinTooLarge(two_j));
    }
    if !finite(gamma) {
        return Err(Error::NonFiniteInput);
    }
    let dim = two_j as usize + 1;
    let prefactor = (1.0 + gamma.norm_sqr()).powf(-f64::from(two_j) / 2.0);
    let mut amplitudes = Vec::with_capacity(dim);
    let mut gamma_pow = C_ONE;
    for n in 0..dim {
        let binom = binomial(two_j, n as u32) as f64;
        amplitudes.push(gamma_pow * binom.sqrt() * prefactor);
        gamma_pow *= gamma;
    }
    Ok(SpinJCoherent {
        two_j,
        gamma,
        amplitudes,
    })
}

/// Parameters of the two-mode superposition of coherent-state products
/// cos θ |α⟩|β⟩ + e^{iφ} sin θ |α′⟩|β′⟩ reduced to qubit amplitudes.
///
/// `lambda_coef`/`gamma_coef` are the branch mixing coefficients
/// λ = cos θ / √((1+|α|²)(1+|β|²)) and
/// γ = e^{iφ} sin θ / √((1+|α′|²)(1+|β′|²)); `n_norm` is the squared norm
/// N = |a|²+|b|²+|c|²+|d|² of the raw amplitudes
/// a = λ+γ, b = βλ+β′γ, c = αλ+α′γ, d = αβλ+α′β′γ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentPairSpec {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub alpha_p: Complex64,
    pub beta_p: Complex64,
    pub theta: f64,
    pub phi: f64,
    pub lambda_coef: Complex64,
    pub gamma_coef: Complex64,
    pub n_norm: f64,
}

impl CoherentPairSpec {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        alpha_p: Complex64,
        beta_p: Complex64,
        theta: f64,
        phi: f64,
    ) -> Result<CoherentPairSpec> {
        if [alpha, beta, alpha_p, beta_p].iter().any(|&z| !finite(z))
            || !theta.is_finite()
            || !phi.is_finite()
        {
            return Err(Error::NonFiniteInput);
        }
        let (s, c) = snapped_sin_cos(theta);
        let (sp, cp) = snapped_sin_cos(phi);
        let phase = Complex64::new(cp, sp);
        let lambda_coef =
            Complex64::new(c, 0.0) / ((1.0 + alpha.norm_sqr()) * (1.0 + beta.norm_sqr())).sqrt();
        let gamma_coef =
            phase * s / ((1.0 + alpha_p.norm_sqr()) * (1.0 + beta_p.norm_sqr())).sqrt();
        let mut spec = CoherentPairSpec {
            alpha,
            beta,
            alpha_p,
            beta_p,
            theta,
            phi,
            lambda_coef,
            gamma_coef,
            n_norm: 0.0,
        };
        spec.n_norm = spec
            .raw_amplitudes()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>();
        Ok(spec)
    }

    /// Unnormalized amplitudes (a, b, c, d) of the superposition.
    pub fn raw_amplitudes(&self) -> [Complex64; 4] {
        let l = self.lambda_coef;
        let g = self.gamma_coef;
        [
            l + g,
            self.beta * l + self.beta_p * g,
            self.alpha * l + self.alpha_p * g,
            self.alpha * self.beta * l + self.alpha_p * self.beta_p * g,
        ]
    }
}

/// Normalized two-qubit state of an entangled coherent superposition.
///
/// Errors with [`Error::ZeroState`] when the branches cancel
/// (N ≤ [`tol::ZERO_NORM`]).
pub fn entangled_coherent_pure(spec: &CoherentPairSpec) -> Result<PureTwoQubit> {
    if spec.n_norm <= tol::ZERO_NORM {
        return Err(Error::ZeroState);
    }
    make_pure(spec.raw_amplitudes())
}

/// Validated two-qubit density matrix: Hermitian, unit trace and PSD within
/// [`tol::DENSITY_SLACK`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4 {
    m: CMatrix4,
}

impl DensityMatrix4 {
    pub fn new(m: CMatrix4) -> Result<DensityMatrix4> {
        if !m.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        let defect = m.hermiticity_defect();
        if defect > tol::DENSITY_SLACK {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {defect:.3e}"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol::DENSITY_SLACK || tr.im.abs() > tol::DENSITY_SLACK {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        // Symmetrize away the round-off defect before the spectral check so
        // the eigensolver's tighter Hermiticity gate cannot trip.
        let sym = (m + m.adjoint()) * 0.5;
        let eig = herm_eigensystem(&sym)?;
        let min = eig.eigenvalues[3];
        if min < -tol::DENSITY_SLACK {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix4 { m: sym })
    }

    /// Wrap a matrix that is valid by construction (debug-asserted).
    pub(crate) fn new_unchecked(m: CMatrix4) -> DensityMatrix4 {
        debug_assert!(m.hermiticity_defect() <= tol::DENSITY_SLACK);
        debug_assert!((m.trace().re - 1.0).abs() <= tol::DENSITY_SLACK);
        DensityMatrix4 { m }
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.m
    }

    pub fn from_pure(psi: &PureTwoQubit) -> DensityMatrix4 {
        DensityMatrix4::new_unchecked(psi.projector())
    }

    /// I/4.
    pub fn maximally_mixed() -> DensityMatrix4 {
        DensityMatrix4::new_unchecked(CMatrix4::diagonal([0.25; 4]))
    }

    pub fn eigensystem(&self) -> Result<HermEigenSystem> {
        herm_eigensystem(&self.m)
    }
}

/// Ensemble decomposition {pᵢ, |ψᵢ⟩}: nonnegative weights summing to 1.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub states: Vec<PureTwoQubit>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureTwoQubit>) -> Result<Decomposition> {
        if weights.is_empty() || weights.len() != states.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 0.0) {
            return Err(Error::InvalidDecomposition(format!("negative weight {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(Error::InvalidDecomposition(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Decomposition { weights, states })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Assemble ρ = Σ pᵢ |ψᵢ⟩⟨ψᵢ| and validate the result.
pub fn density_from_decomposition(decomp: &Decomposition) -> Result<DensityMatrix4> {
    let mut m = CMatrix4::zero();
    for (w, psi) in decomp.weights.iter().zip(&decomp.states) {
        m = m + psi.projector() * *w;
    }
    DensityMatrix4::new(m).map_err(|e| {
        Error::InvalidDecomposition(format!("reconstructed density invalid: {e}"))
    })
}

/// Werner state p |Φ+⟩⟨Φ+| + (1−p) I/4.
pub fn werner_state(p: f64) -> Result<DensityMatrix4> {
    if !p.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError(p, "werner_state"));
    }
    let bell = PureTwoQubit::bell_phi_plus().projector() * p;
    let mixed = CMatrix4::diagonal([(1.0 - p) / 4.0; 4]);
    DensityMatrix4::new(bell + mixed)
}

/// Spectral decomposition of ρ; eigenvalue weights below
/// [`tol::WEIGHT_DROP`] are dropped and the remainder renormalized.
pub fn eigendecompose_density(rho: &DensityMatrix4) -> Result<Decomposition> {
    let eig = rho.eigensystem()?;
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for k in 0..4 {
        if eig.eigenvalues[k] > tol::WEIGHT_DROP {
            weights.push(eig.eigenvalues[k]);
            states.push(PureTwoQubit::from_normalized(eig.eigenvectors[k]));
        }
    }
    if weights.is_empty() {
        return Err(Error::InvalidDensity("empty spectrum".to_string()));
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Decomposition::new(weights, states)
}
