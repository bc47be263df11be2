//! The `measure` subcommand: evaluate every applicable measure for one
//! JSON-described state and print a JSON report.

use std::io::Read;

use serde::Serialize;

use concurrence::schema::{DomainState, StateInput};
use concurrence::{
    amplitude_concurrence, concurrence_pure, concurrence_squared_rank3, convex_roof_concurrence,
    entanglement_of_formation, make_pure, tol, wootters_concurrence, CaseLabel, DensityMatrix4,
    PureTwoQubit, RoofConfig, TripleMixture,
};

use crate::{Failure, MeasureArgs};

#[derive(Serialize)]
struct Report {
    input: StateInput,
    #[serde(flatten)]
    body: Body,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Body {
    Pure(PureBody),
    Mixture(MixtureBody),
    Density(DensityBody),
}

#[derive(Serialize)]
struct PureBody {
    concurrence: f64,
    concurrence_squared: f64,
    eof: f64,
    /// Wootters closed form on the projector — must match `concurrence`.
    wootters_concurrence: f64,
    /// Present when the state came from coherent-pair parameters.
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitude_concurrence: Option<f64>,
    /// Norm of the raw input amplitudes before normalization.
    input_norm: f64,
}

#[derive(Serialize)]
struct Rank3Block {
    c_squared: f64,
    lower_bound: f64,
    upper_bound: f64,
    case_label: CaseLabel,
    base_term: f64,
    term_breakdown: [f64; 3],
    orthogonal: bool,
    negative: bool,
    lower_bound_violated: bool,
    upper_bound_violated: bool,
}

#[derive(Serialize)]
struct WoottersBlock {
    concurrence: f64,
    c_squared: f64,
    spectrum: [f64; 4],
    eof: f64,
}

#[derive(Serialize)]
struct RoofBlock {
    concurrence: f64,
    c_squared: f64,
    converged: bool,
    iterations_used: usize,
    best_restart: usize,
    ensemble_len: usize,
}

#[derive(Serialize)]
struct MixtureBody {
    rank3: Rank3Block,
    wootters: WoottersBlock,
    roof: RoofBlock,
    rank3_minus_wootters_c_squared: f64,
}

#[derive(Serialize)]
struct DensityBody {
    /// Number of eigenvalues above the zero-weight cutoff.
    rank: usize,
    wootters: WoottersBlock,
    roof: RoofBlock,
    /// Rank-3 formula on the eigendecomposition, when rank <= 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    rank3: Option<Rank3Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank3_minus_wootters_c_squared: Option<f64>,
}

fn rank3_block(mix: &TripleMixture) -> Result<Rank3Block, Failure> {
    let r = concurrence_squared_rank3(mix)?;
    Ok(Rank3Block {
        c_squared: r.c_squared,
        lower_bound: r.lower_bound,
        upper_bound: r.upper_bound,
        case_label: r.case_label,
        base_term: r.base_term,
        term_breakdown: r.term_breakdown,
        orthogonal: r.orthogonal,
        negative: r.negative,
        lower_bound_violated: r.lower_bound_violated,
        upper_bound_violated: r.c_squared > r.upper_bound + tol::BOUND_SLACK,
    })
}

fn wootters_block(rho: &DensityMatrix4) -> Result<WoottersBlock, Failure> {
    let (c, spectrum) = wootters_concurrence(rho)?;
    Ok(WoottersBlock {
        concurrence: c,
        c_squared: c * c,
        spectrum: spectrum.lambdas,
        eof: entanglement_of_formation(c)?,
    })
}

fn roof_block(rho: &DensityMatrix4, seed: u64) -> Result<RoofBlock, Failure> {
    let config = RoofConfig {
        seed,
        ..RoofConfig::default()
    };
    let r = convex_roof_concurrence(rho, &config)?;
    Ok(RoofBlock {
        concurrence: r.concurrence,
        c_squared: r.concurrence * r.concurrence,
        converged: r.converged,
        iterations_used: r.iterations_used,
        best_restart: r.best_restart,
        ensemble_len: r.decomposition.len(),
    })
}

fn pure_body(state: &PureTwoQubit, spec_c: Option<f64>) -> Result<PureBody, Failure> {
    let c = concurrence_pure(state);
    let projector = DensityMatrix4::from_pure(state);
    let (cw, _) = wootters_concurrence(&projector)?;
    Ok(PureBody {
        concurrence: c,
        concurrence_squared: c * c,
        eof: entanglement_of_formation(c)?,
        wootters_concurrence: cw,
        amplitude_concurrence: spec_c,
        input_norm: state.norm,
    })
}

/// Build a TripleMixture from the spectral decomposition of a rank <= 3
/// density, padding missing components with zero-weight eigenvectors.
fn mixture_from_spectrum(rho: &DensityMatrix4, rank: usize) -> Result<TripleMixture, Failure> {
    let eig = rho.eigensystem()?;
    let mut weights = [0.0_f64; 3];
    let mut states = Vec::with_capacity(3);
    for k in 0..3 {
        if k < rank {
            weights[k] = eig.eigenvalues[k];
        }
        states.push(make_pure(eig.eigenvectors[k])?);
    }
    // Renormalize away the truncated tail mass (eigenvalues <= cutoff).
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(TripleMixture::new(
        weights,
        [states[0], states[1], states[2]],
    )?)
}

fn body_for(domain: &DomainState, seed: u64) -> Result<Body, Failure> {
    match domain {
        DomainState::Pure { state, spec } => {
            let spec_c = match spec {
                Some(s) => Some(amplitude_concurrence(s)?),
                None => None,
            };
            Ok(Body::Pure(pure_body(state, spec_c)?))
        }
        DomainState::Mixture(mix) => {
            let rank3 = rank3_block(mix)?;
            let rho = mix.density()?;
            let wootters = wootters_block(&rho)?;
            let roof = roof_block(&rho, seed)?;
            let diff = rank3.c_squared - wootters.c_squared;
            Ok(Body::Mixture(MixtureBody {
                rank3,
                wootters,
                roof,
                rank3_minus_wootters_c_squared: diff,
            }))
        }
        DomainState::Density(rho) => {
            let rank = eigendensity_rank(rho)?;
            let wootters = wootters_block(rho)?;
            let roof = roof_block(rho, seed)?;
            let rank3 = if rank <= 3 {
                Some(rank3_block(&mixture_from_spectrum(rho, rank)?)?)
            } else {
                None
            };
            let diff = rank3.as_ref().map(|r| r.c_squared - wootters.c_squared);
            Ok(Body::Density(DensityBody {
                rank,
                wootters,
                roof,
                rank3,
                rank3_minus_wootters_c_squared: diff,
            }))
        }
    }
}

fn eigendensity_rank(rho: &DensityMatrix4) -> Result<usize, Failure> {
    let eig = rho.eigensystem()?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&nu| nu > tol::WEIGHT_DROP)
        .count())
}

fn read_state(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::io(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("reading {path}: {e}")))
    }
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<(), Failure> {
    let text = read_state(&args.state)?;
    let input: StateInput = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("invalid state JSON: {e}")))?;
    let domain = input.to_domain()?;
    let report = Report {
        input,
        body: body_for(&domain, args.seed)?,
    };
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::io(format!("serializing report: {e}")))?;
    crate::emit_line(&rendered)
}
