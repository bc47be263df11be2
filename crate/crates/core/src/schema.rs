//! Serializable input descriptions of states and mixtures.
//!
//! The JSON form is externally tagged: `{"pure": {...}}`,
//! `{"coherent": {...}}`, `{"mixture": {...}}` or `{"density": {...}}`.
//! Complex numbers are `[re, im]` pairs. Pure amplitudes may be
//! unnormalized; they are normalized on conversion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qlinalg::CMatrix4;
use crate::states::{
    entangled_coherent_pure, make_pure, CoherentPairSpec, DensityMatrix4, PureTwoQubit,
};
use crate::rank3::TripleMixture;

fn c(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

/// Explicit amplitudes in the |00⟩, |01⟩, |10⟩, |11⟩ order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureInput {
    pub amps: [[f64; 2]; 4],
}

/// Parameters of an entangled coherent-state superposition
/// cosθ|α⟩|β⟩ + e^{iφ}sinθ|α′⟩|β′⟩ of spin-coherent qubit factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherentInput {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub alpha_p: [f64; 2],
    pub beta_p: [f64; 2],
    pub theta: f64,
    pub phi: f64,
}

impl CoherentInput {
    pub fn to_spec(&self) -> Result<CoherentPairSpec> {
        CoherentPairSpec::new(
            c(self.alpha),
            c(self.beta),
            c(self.alpha_p),
            c(self.beta_p),
            self.theta,
            self.phi,
        )
    }
}

/// One component of a mixture.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentInput {
    Pure(PureInput),
    Coherent(CoherentInput),
}

/// A three-component mixture; weights must sum to 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureInput {
    pub p: [f64; 3],
    pub components: [ComponentInput; 3],
}

/// A density matrix given row by row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityInput {
    pub rows: [[[f64; 2]; 4]; 4],
}

/// Any state the tools accept.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateInput {
    Pure(PureInput),
    Coherent(CoherentInput),
    Mixture(MixtureInput),
    Density(DensityInput),
}

/// Validated domain form of a [`StateInput`].
#[derive(Clone, Debug)]
pub enum DomainState {
    /// A pure state; the coherent-state spec is kept when the input used
    /// the coherent parameterization.
    Pure {
        state: PureTwoQubit,
        spec: Option<CoherentPairSpec>,
    },
    Mixture(TripleMixture),
    Density(DensityMatrix4),
}

fn component_to_pure(input: &ComponentInput) -> Result<(PureTwoQubit, Option<CoherentPairSpec>)> {
    match input {
        ComponentInput::Pure(p) => {
            Ok((make_pure([c(p.amps[0]), c(p.amps[1]), c(p.amps[2]), c(p.amps[3])])?, None))
        }
        ComponentInput::Coherent(ci) => {
            let spec = ci.to_spec()?;
            Ok((entangled_coherent_pure(&spec)?, Some(spec)))
        }
    }
}

impl StateInput {
    /// Validate and convert into domain objects.
    pub fn to_domain(&self) -> Result<DomainState> {
        match self {
            StateInput::Pure(p) => Ok(DomainState::Pure {
                state: make_pure([c(p.amps[0]), c(p.amps[1]), c(p.amps[2]), c(p.amps[3])])?,
                spec: None,
            }),
            StateInput::Coherent(ci) => {
                let spec = ci.to_spec()?;
                Ok(DomainState::Pure {
                    state: entangled_coherent_pure(&spec)?,
                    spec: Some(spec),
                })
            }
            StateInput::Mixture(m) => {
                let parts = [
                    component_to_pure(&m.components[0])?,
                    component_to_pure(&m.components[1])?,
                    component_to_pure(&m.components[2])?,
                ];
                let mut mix = TripleMixture::new(
                    m.p,
                    [parts[0].0, parts[1].0, parts[2].0],
                )?;
                if let (Some(a), Some(b), Some(cc)) = (parts[0].1, parts[1].1, parts[2].1) {
                    mix.coherent_specs = Some([a, b, cc]);
                }
                Ok(DomainState::Mixture(mix))
            }
            StateInput::Density(d) => {
                let m = CMatrix4::from_fn(|i, j| c(d.rows[i][j]));
                Ok(DomainState::Density(DensityMatrix4::new(m)?))
            }
        }
    }
}
