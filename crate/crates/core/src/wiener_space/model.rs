use serde::{Deserialize, Serialize};

use super::schauder::{synthesize, SchauderElement};
use super::vector::HVector;
use crate::error::{Error, Result};

/// Largest supported Faber–Schauder depth (`K = 2^20` coefficients).
pub const MAX_LEVELS: u32 = 20;
/// Largest supported dyadic evaluation resolution.
pub const MAX_RESOLUTION: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmbientNorm {
    L2,
    SUP,
}

/// Classical Wiener space truncated to the first `2^levels` Faber–Schauder
/// elements, with the sup-norm taken over the dyadic grid of step
/// `2^-resolution`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalWiener {
    levels: u32,
    resolution: u32,
}

impl ClassicalWiener {
    pub fn new(levels: u32, resolution: u32) -> Result<Self> {
        if levels > MAX_LEVELS {
            return Err(Error::InvalidModel(format!(
                "J = {levels} exceeds the supported maximum {MAX_LEVELS}"
            )));
        }
        if resolution < levels + 1 {
            return Err(Error::InvalidModel(format!(
                "m = {resolution} must be at least J + 1 = {}",
                levels + 1
            )));
        }
        if resolution > MAX_RESOLUTION {
            return Err(Error::InvalidModel(format!(
                "m = {resolution} exceeds the supported maximum {MAX_RESOLUTION}"
            )));
        }
        Ok(ClassicalWiener { levels, resolution })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn dimension(&self) -> usize {
        1 << self.levels
    }
}

/// Sequence space with `W`-weights `σ_k`: `e_k` has `W`-length `σ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSequence {
    sigmas: Vec<f64>,
    ambient: AmbientNorm,
}

impl DiagonalSequence {
    pub fn new(sigmas: Vec<f64>, ambient: AmbientNorm) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::InvalidModel("sigmas must be non-empty".into()));
        }
        if let Some(i) = sigmas.iter().position(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidModel(format!(
                "sigmas[{i}] = {} is not a positive finite number",
                sigmas[i]
            )));
        }
        Ok(DiagonalSequence { sigmas, ambient })
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn ambient(&self) -> AmbientNorm {
        self.ambient
    }
}

/// A concrete truncated abstract Wiener space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelDoc", into = "ModelDoc")]
pub enum ModelSpec {
    ClassicalWiener(ClassicalWiener),
    DiagonalSequence(DiagonalSequence),
}

impl ModelSpec {
    pub fn classical(levels: u32, resolution: u32) -> Result<Self> {
        ClassicalWiener::new(levels, resolution).map(ModelSpec::ClassicalWiener)
    }

    pub fn diagonal(sigmas: Vec<f64>, ambient: AmbientNorm) -> Result<Self> {
        DiagonalSequence::new(sigmas, ambient).map(ModelSpec::DiagonalSequence)
    }

    /// Number of basis coefficients `K`.
    pub fn dimension(&self) -> usize {
        match self {
            ModelSpec::ClassicalWiener(c) => c.dimension(),
            ModelSpec::DiagonalSequence(d) => d.sigmas.len(),
        }
    }

    pub fn w_norm(&self, x: &HVector) -> Result<f64> {
        x.check_len(self.dimension())?;
        Ok(self.w_norm_unchecked(x.coeffs()))
    }

    pub(crate) fn w_norm_unchecked(&self, coeffs: &[f64]) -> f64 {
        match self {
            ModelSpec::ClassicalWiener(c) => synthesize(coeffs, c.resolution)
                .into_iter()
                .fold(0.0, |m, v| m.max(v.abs())),
            ModelSpec::DiagonalSequence(d) => {
                let weighted = coeffs.iter().zip(&d.sigmas).map(|(a, s)| a * s);
                match d.ambient {
                    AmbientNorm::L2 => weighted.map(|v| v * v).sum::<f64>().sqrt(),
                    AmbientNorm::SUP => weighted.fold(0.0, |m, v| m.max(v.abs())),
                }
            }
        }
    }

    /// `W`-norm of the 1-based basis element `e_index`.
    pub fn basis_w_norm(&self, index: usize) -> Result<f64> {
        if index == 0 || index > self.dimension() {
            return Err(Error::InvalidRange {
                lo: index,
                hi: index + 1,
                len: self.dimension(),
            });
        }
        Ok(match self {
            ModelSpec::ClassicalWiener(_) => SchauderElement::from_index(index).sup_norm(),
            ModelSpec::DiagonalSequence(d) => d.sigmas[index - 1],
        })
    }

    /// Reconstructs `Σ α_k e_k(t)` for the classical model.
    pub fn evaluate(&self, x: &HVector, t: f64) -> Result<f64> {
        let ModelSpec::ClassicalWiener(c) = self else {
            return Err(Error::InvalidModel(
                "pointwise evaluation needs the classical Wiener model".into(),
            ));
        };
        x.check_len(c.dimension())?;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfDomain(t));
        }
        Ok(x
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(i, a)| a * SchauderElement::from_index(i + 1).eval(t))
            .sum())
    }
}

/// `α_k ≡ 1` against `σ_k = ρ^k`, `k = 1..=count`: finite in `W` for
/// `ρ < 1` while its `H`-norm `√count` diverges with the truncation.
pub fn h_divergent_geometric(
    rho: f64,
    count: usize,
    ambient: AmbientNorm,
) -> Result<(ModelSpec, HVector)> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::param("rho", format!("{rho} is not positive")));
    }
    if count == 0 {
        return Err(Error::param("count", "must be at least 1"));
    }
    let sigmas = (1..=count).map(|k| rho.powi(k as i32)).collect();
    let model = ModelSpec::diagonal(sigmas, ambient)?;
    Ok((model, HVector::new(vec![1.0; count])?))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum ModelDoc {
    ClassicalWiener {
        #[serde(rename = "J")]
        levels: u32,
        m: u32,
    },
    DiagonalSequence {
        sigmas: Vec<f64>,
        ambient: AmbientNorm,
    },
}

impl TryFrom<ModelDoc> for ModelSpec {
    type Error = Error;

    fn try_from(doc: ModelDoc) -> Result<Self> {
        match doc {
            ModelDoc::ClassicalWiener { levels, m } => ModelSpec::classical(levels, m),
            ModelDoc::DiagonalSequence { sigmas, ambient } => ModelSpec::diagonal(sigmas, ambient),
        }
    }
}

impl From<ModelSpec> for ModelDoc {
    fn from(model: ModelSpec) -> Self {
        match model {
            ModelSpec::ClassicalWiener(c) => ModelDoc::ClassicalWiener {
                levels: c.levels,
                m: c.resolution,
            },
            ModelSpec::DiagonalSequence(d) => ModelDoc::DiagonalSequence {
                sigmas: d.sigmas,
                ambient: d.ambient,
            },
        }
    }
}
