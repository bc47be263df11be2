//! Simplified concurrence-squared formula for rank-3 mixtures of two-qubit
//! pure states, with its product-form bounds and the real-amplitude case
//! classification.
//!
//! For a mixture ρ = Σ pᵢ|ψᵢ⟩⟨ψᵢ| of three components the formula combines
//! the component complex concurrences 𝐜ᵢ = 2(aᵢdᵢ − bᵢcᵢ) with grouped sums
//! over the quartet of superposition states |μⁱ⟩ = (ψ₁ ± ψ₂ ± ψ₃)/√3. All
//! intermediate quantities stay complex; moduli are taken only where the
//! formula calls for them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{amplitude_concurrence, complex_concurrence_pure, concurrence_pure};
use crate::states::{
    density_from_decomposition, entangled_coherent_pure, make_pure, CoherentPairSpec,
    Decomposition, DensityMatrix4, PureTwoQubit,
};
use crate::tol;

/// Sign patterns (s₂, s₃) of the quartet ψ₁ + s₂ψ₂ + s₃ψ₃.
const QUARTET_SIGNS: [[f64; 2]; 4] = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]];

/// Index pairs (i, j) of the three pairings, in the order their grouped sums
/// are stored: unprimed (1,2), primed (1,3), double-primed (2,3).
const PAIRINGS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// A three-component mixture of pure two-qubit states.
///
/// Weights are validated (nonnegative, summing to 1 within
/// [`tol::WEIGHT_SUM`]); zero weights are allowed so two-component mixtures
/// embed naturally. When the mixture was built from coherent-state
/// parameters the specs are carried along for the amplitude-form shortcuts.
#[derive(Clone, Debug)]
pub struct TripleMixture {
    pub p: [f64; 3],
    pub components: [PureTwoQubit; 3],
    pub coherent_specs: Option<[CoherentPairSpec; 3]>,
}

impl TripleMixture {
    pub fn new(p: [f64; 3], components: [PureTwoQubit; 3]) -> Result<TripleMixture> {
        if p.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if let Some(&w) = p.iter().find(|&&w| w < 0.0) {
            return Err(Error::InvalidDecomposition(format!("negative weight {w}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(Error::InvalidDecomposition(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(TripleMixture {
            p,
            components,
            coherent_specs: None,
        })
    }

    /// Build the mixture from three coherent-superposition parameter sets.
    pub fn from_coherent(p: [f64; 3], specs: [CoherentPairSpec; 3]) -> Result<TripleMixture> {
        let components = [
            entangled_coherent_pure(&specs[0])?,
            entangled_coherent_pure(&specs[1])?,
            entangled_coherent_pure(&specs[2])?,
        ];
        let mut mix = TripleMixture::new(p, components)?;
        mix.coherent_specs = Some(specs);
        Ok(mix)
    }

    pub fn to_decomposition(&self) -> Decomposition {
        Decomposition {
            weights: self.p.to_vec(),
            states: self.components.to_vec(),
        }
    }

    /// ρ = Σ pᵢ |ψᵢ⟩⟨ψᵢ|.
    pub fn density(&self) -> Result<DensityMatrix4> {
        density_from_decomposition(&self.to_decomposition())
    }

    /// True when all pairwise component overlaps stay below
    /// [`tol::ORTHOGONALITY`].
    pub fn is_orthogonal(&self) -> bool {
        PAIRINGS.iter().all(|&(i, j)| {
            self.components[i].inner(&self.components[j]).norm() < tol::ORTHOGONALITY
        })
    }
}

/// The four superposition states |μⁱ⟩ = (ψ₁ ± ψ₂ ± ψ₃)/√3, normalized with
/// their pre-normalization norms recorded.
///
/// Errors with [`Error::ZeroState`] when a sign pattern cancels the
/// components entirely.
pub fn quartet_states(mix: &TripleMixture) -> Result<[PureTwoQubit; 4]> {
    let raw = quartet_raw(mix);
    Ok([
        make_pure(raw[0])?,
        make_pure(raw[1])?,
        make_pure(raw[2])?,
        make_pure(raw[3])?,
    ])
}

fn quartet_raw(mix: &TripleMixture) -> [[Complex64; 4]; 4] {
    let inv_sqrt3 = 1.0 / 3.0_f64.sqrt();
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (idx, signs) in QUARTET_SIGNS.iter().enumerate() {
        for k in 0..4 {
            out[idx][k] = (mix.components[0].amps[k]
                + signs[0] * mix.components[1].amps[k]
                + signs[1] * mix.components[2].amps[k])
                * inv_sqrt3;
        }
    }
    out
}

/// Complex concurrence of an unnormalized amplitude vector: 2(ad − bc).
fn raw_complex_concurrence(amps: &[Complex64; 4]) -> Complex64 {
    2.0 * (amps[0] * amps[3] - amps[1] * amps[2])
}

/// The complex concurrence data feeding the rank-3 formula.
///
/// `c_plus[k]`/`c_minus[k]` are the grouped quartet sums of pairing `k` in
/// [`PAIRINGS`] order (𝐜±, 𝐜±′, 𝐜±″). `quartet[i]` are the complex
/// concurrences 𝐂ⁱ of the unnormalized quartet states, so
/// `c_plus[0] = quartet[0] + quartet[1]`, `c_minus[0] = quartet[2] + quartet[3]`,
/// and the analogous regroupings hold for the primed pairings.
#[derive(Clone, Copy, Debug)]
pub struct PairwiseConcurrences {
    pub c: [Complex64; 3],
    pub c_plus: [Complex64; 3],
    pub c_minus: [Complex64; 3],
    pub quartet: [Complex64; 4],
}

/// Component, grouped-sum and quartet complex concurrences of a mixture.
///
/// The grouped sums are evaluated from the polarization identity
/// 𝐜± = (2/3)(Σᵢ𝐜ᵢ ± 2σᵢⱼ) with σᵢⱼ = aᵢdⱼ + aⱼdᵢ − bᵢcⱼ − bⱼcᵢ, while the
/// quartet values come from the explicit superposition states; the two
/// routes agreeing within round-off is a tested invariant.
pub fn pairwise_complex_concurrences(mix: &TripleMixture) -> PairwiseConcurrences {
    let c = [
        complex_concurrence_pure(&mix.components[0]),
        complex_concurrence_pure(&mix.components[1]),
        complex_concurrence_pure(&mix.components[2]),
    ];
    let c_total = c[0] + c[1] + c[2];

    let sigma = |i: usize, j: usize| -> Complex64 {
        let x = &mix.components[i].amps;
        let y = &mix.components[j].amps;
        x[0] * y[3] + y[0] * x[3] - x[1] * y[2] - y[1] * x[2]
    };

    let mut c_plus = [Complex64::new(0.0, 0.0); 3];
    let mut c_minus = [Complex64::new(0.0, 0.0); 3];
    for (k, &(i, j)) in PAIRINGS.iter().enumerate() {
        let s = sigma(i, j);
        c_plus[k] = (c_total + 2.0 * s) * (2.0 / 3.0);
        c_minus[k] = (c_total - 2.0 * s) * (2.0 / 3.0);
    }

    let raw = quartet_raw(mix);
    let quartet = [
        raw_complex_concurrence(&raw[0]),
        raw_complex_concurrence(&raw[1]),
        raw_complex_concurrence(&raw[2]),
        raw_complex_concurrence(&raw[3]),
    ];

    PairwiseConcurrences {
        c,
        c_plus,
        c_minus,
        quartet,
    }
}

/// Which analytic regime a real-amplitude mixture falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    /// 0 ≤ 4𝐜ᵢ𝐜ⱼ ≤ (𝐜₊−𝐜₋)² for every pairing: C² meets the upper bound.
    UpperCaseB1,
    /// 4𝐜ᵢ𝐜ⱼ ≥ (𝐜₊−𝐜₋)² ≥ 0 for every pairing: strictly between the bounds.
    IntermediateB2,
    /// 𝐜ᵢ𝐜ⱼ ≤ 0 for every pairing: C² meets the lower bound.
    LowerB3,
    /// 𝐜₊ = 𝐜₋ for every pairing: C² meets the lower bound.
    LowerC,
    Generic,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::UpperCaseB1 => "UPPER_CASE_B1",
            CaseLabel::IntermediateB2 => "INTERMEDIATE_B2",
            CaseLabel::LowerB3 => "LOWER_B3",
            CaseLabel::LowerC => "LOWER_C",
            CaseLabel::Generic => "GENERIC",
        };
        f.write_str(s)
    }
}

/// Classify a mixture into the real-amplitude analytic cases.
///
/// Mixtures with any amplitude further than [`tol::REAL_GATE`] from the real
/// axis are `GENERIC` outright. The case-C equalities are tested first (they
/// are the most specific), then B1, B2 and B3; inequality comparisons carry
/// a [`tol::CASE_SLACK`] slack so analytically exact boundary instances
/// classify stably.
pub fn classify_real_case(mix: &TripleMixture) -> CaseLabel {
    let imag_max = mix
        .components
        .iter()
        .flat_map(|s| s.amps.iter())
        .map(|z| z.im.abs())
        .fold(0.0_f64, f64::max);
    if imag_max > tol::REAL_GATE {
        return CaseLabel::Generic;
    }

    let pw = pairwise_complex_concurrences(mix);
    // Products of (near-)real inputs: imaginary residue is bounded by a few
    // ulps of the real gate and is ignored below.
    debug_assert!(pw.c.iter().all(|z| z.im.abs() < 1e-10));
    debug_assert!(pw.c_plus.iter().all(|z| z.im.abs() < 1e-10));

    let c: [f64; 3] = [pw.c[0].re, pw.c[1].re, pw.c[2].re];
    let mut diff = [0.0_f64; 3];
    for k in 0..3 {
        diff[k] = (pw.c_plus[k] - pw.c_minus[k]).re;
    }

    if diff.iter().all(|d| d.abs() < tol::CASE_EQUALITY) {
        return CaseLabel::LowerC;
    }

    let g: Vec<f64> = PAIRINGS.iter().map(|&(i, j)| 4.0 * c[i] * c[j]).collect();
    let d2: Vec<f64> = diff.iter().map(|d| d * d).collect();

    if (0..3).all(|k| g[k] >= -tol::CASE_SLACK && g[k] <= d2[k] + tol::CASE_SLACK) {
        return CaseLabel::UpperCaseB1;
    }
    if (0..3).all(|k| g[k] >= d2[k] - tol::CASE_SLACK) {
        return CaseLabel::IntermediateB2;
    }
    if PAIRINGS.iter().all(|&(i, j)| c[i] * c[j] <= tol::CASE_SLACK) {
        return CaseLabel::LowerB3;
    }
    CaseLabel::Generic
}

/// Product-form bounds: ((p₁C₁ − p₂C₂ − p₃C₃)², (p₁C₁ + p₂C₂ + p₃C₃)²).
///
/// The upper bound is a theorem of the rank-3 formula; the lower bound can
/// be undercut (it is reported, and violations are flagged, never asserted).
pub fn concurrence_bounds(mix: &TripleMixture) -> (f64, f64) {
    let pc: Vec<f64> = (0..3)
        .map(|i| mix.p[i] * concurrence_pure(&mix.components[i]))
        .collect();
    let lower = pc[0] - pc[1] - pc[2];
    let upper = pc[0] + pc[1] + pc[2];
    (lower * lower, upper * upper)
}

/// Everything the rank-3 evaluation produces.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Rank3Result {
    /// C²(ρ) per the simplified formula. May be (slightly) negative for
    /// strongly nonorthogonal components; never clamped.
    pub c_squared: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub case_label: CaseLabel,
    /// Σ pᵢ²Cᵢ².
    pub base_term: f64,
    /// Pairwise cross terms in [`PAIRINGS`] order.
    pub term_breakdown: [f64; 3],
    /// c_squared < 0 (round-off or nonorthogonal breakdown; reported as-is).
    pub negative: bool,
    /// c_squared undercuts the product-form lower bound beyond
    /// [`tol::BOUND_SLACK`].
    pub lower_bound_violated: bool,
    /// All pairwise component overlaps below [`tol::ORTHOGONALITY`].
    pub orthogonal: bool,
}

/// Evaluate the simplified rank-3 concurrence-squared formula
///
/// C² = Σ pᵢ²Cᵢ² + Σ_{(i,j)} ½pᵢpⱼ(|𝐜₊−𝐜₋|² − |(𝐜₊−𝐜₋)² − 4𝐜ᵢ𝐜ⱼ|),
///
/// with the grouped sums of the pairing (i, j) inside each term. The upper
/// bound is algebraically guaranteed and hard-asserted; exceeding it beyond
/// [`tol::BOUND_SLACK`] raises [`Error::InvariantViolation`].
pub fn concurrence_squared_rank3(mix: &TripleMixture) -> Result<Rank3Result> {
    let pw = pairwise_complex_concurrences(mix);
    let p = mix.p;

    let mut base = 0.0;
    for i in 0..3 {
        let ci = concurrence_pure(&mix.components[i]);
        base += p[i] * p[i] * ci * ci;
    }

    let mut terms = [0.0_f64; 3];
    for (k, &(i, j)) in PAIRINGS.iter().enumerate() {
        let diff = pw.c_plus[k] - pw.c_minus[k];
        let inner = diff * diff - 4.0 * pw.c[i] * pw.c[j];
        terms[k] = 0.5 * p[i] * p[j] * (diff.norm_sqr() - inner.norm());
    }

    let c_squared = base + terms[0] + terms[1] + terms[2];
    let (lower_bound, upper_bound) = concurrence_bounds(mix);
    if c_squared > upper_bound + tol::BOUND_SLACK {
        return Err(Error::InvariantViolation(format!(
            "rank-3 C² = {c_squared} exceeds its upper bound {upper_bound}"
        )));
    }

    Ok(Rank3Result {
        c_squared,
        lower_bound,
        upper_bound,
        case_label: classify_real_case(mix),
        base_term: base,
        term_breakdown: terms,
        negative: c_squared < 0.0,
        lower_bound_violated: c_squared < lower_bound - tol::BOUND_SLACK,
        orthogonal: mix.is_orthogonal(),
    })
}

/// Parameters of the symmetric one-entangled-component reduction
/// (α = β, α′ = β′ real, equal-weight branches).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricCaseParams {
    pub p_i: f64,
    pub alpha: f64,
    pub alpha_p: f64,
    /// X = ((αα′ + 1)/(α − α′))²; +∞ on the α = α′ diagonal.
    pub x: f64,
}

impl SymmetricCaseParams {
    pub fn new(p_i: f64, alpha: f64, alpha_p: f64) -> SymmetricCaseParams {
        let ratio = (alpha * alpha_p + 1.0) / (alpha - alpha_p);
        SymmetricCaseParams {
            p_i,
            alpha,
            alpha_p,
            x: ratio * ratio,
        }
    }

    /// C² = (pᵢ/(1 + 2X))²; 0 on the diagonal (X = ∞).
    pub fn c_squared(&self) -> f64 {
        let c = self.p_i / (1.0 + 2.0 * self.x);
        c * c
    }
}

/// Case-D concurrence squared of the symmetric reduction, directly from the
/// real branch amplitudes.
pub fn reduced_symmetric_concurrence(p_i: f64, alpha: f64, alpha_p: f64) -> f64 {
    SymmetricCaseParams::new(p_i, alpha, alpha_p).c_squared()
}

/// Case D: exactly one entangled component among three.
///
/// Requires the coherent-state specs (the value uses the amplitude form of
/// the entangled component) and exactly two separable components, i.e. two
/// component concurrences below [`tol::SEPARABLE`]. Returns (pᵢCᵢ)².
pub fn case_d_concurrence(mix: &TripleMixture) -> Result<f64> {
    let specs = mix.coherent_specs.as_ref().ok_or(Error::PreconditionFailed(
        "case D needs the coherent-state component specs",
    ))?;
    let separable: Vec<bool> = mix
        .components
        .iter()
        .map(|s| concurrence_pure(s) <= tol::SEPARABLE)
        .collect();
    if separable.iter().filter(|&&s| s).count() != 2 {
        return Err(Error::PreconditionFailed(
            "exactly two of the three components must be separable",
        ));
    }
    let i = separable.iter().position(|&s| !s).unwrap();
    let ci = amplitude_concurrence(&specs[i])?;
    Ok((mix.p[i] * ci) * (mix.p[i] * ci))
}
