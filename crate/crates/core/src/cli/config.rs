use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coupling::{plan_blocks, BlockPlan, Refinement};
use crate::error::{Error, Result};
use crate::simulation::{RngPolicy, TimeGrid};
use crate::wiener_space::{h_divergent_geometric, AmbientNorm, HVector, ModelSpec};

pub const SCHEMA_VERSION: u32 = 1;
pub const FAMILY_PREFIX: &str = "h-divergent-geometric";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    CouplingTime,
    Maximality,
    Infinity,
    Ruin,
    Density,
    Isometry,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CouplingTime => "coupling-time",
            ExperimentKind::Maximality => "maximality",
            ExperimentKind::Infinity => "infinity",
            ExperimentKind::Ruin => "ruin",
            ExperimentKind::Density => "density",
            ExperimentKind::Isometry => "isometry",
        }
    }
}

/// Either explicit coefficients, or a named family that also fixes the
/// model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisplacementSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientNorm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub horizon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<f64>>,
}

/// Overrides of the default acceptance tolerances.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks_exact: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks_grid: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub censor_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_band: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence_threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// KS bound for exact first-passage draws.
    pub ks_exact: f64,
    /// KS bound for grid-detected coupling times.
    pub ks_grid: f64,
    /// Largest admissible fraction of grid-detected times censored at the
    /// horizon.
    pub censor_max: f64,
    /// Width, in standard errors, of binomial / mean / χ² bands.
    pub sigma_band: f64,
    /// Final median `d_W` as a fraction of `d_W(0)`.
    pub final_fraction: f64,
    /// `H`-norm above which a displacement is flagged as divergent.
    pub divergence_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ks_exact: 0.02,
            ks_grid: 0.03,
            censor_max: 0.01,
            sigma_band: 3.0,
            final_fraction: 0.10,
            divergence_threshold: 4.0,
        }
    }
}

impl ToleranceOverrides {
    fn apply(&self, mut t: Tolerances) -> Result<Tolerances> {
        let fields = [
            ("tolerances.ks_exact", self.ks_exact, &mut t.ks_exact),
            ("tolerances.ks_grid", self.ks_grid, &mut t.ks_grid),
            ("tolerances.censor_max", self.censor_max, &mut t.censor_max),
            ("tolerances.sigma_band", self.sigma_band, &mut t.sigma_band),
            ("tolerances.final_fraction", self.final_fraction, &mut t.final_fraction),
            (
                "tolerances.divergence_threshold",
                self.divergence_threshold,
                &mut t.divergence_threshold,
            ),
        ];
        for (field, value, slot) in fields {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::config(field, format!("{v} must be non-negative")));
                }
                *slot = v;
            }
        }
        Ok(t)
    }
}

/// Experiment configuration document (`"schema": 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub kind: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    pub displacement: DisplacementSpec,
    pub grid: GridSpec,
    pub replicates: u64,
    pub seed: u64,
    #[serde(default = "default_bridge")]
    pub bridge: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

fn default_bridge() -> bool {
    true
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::config(
                if path == "." { "<root>".to_string() } else { path },
                format!("{inner}"),
            )
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Validates and expands the document into a runnable experiment.
    pub fn resolve(&self) -> Result<Experiment> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::config(
                "schema",
                format!("unsupported schema {}, expected {SCHEMA_VERSION}", self.schema),
            ));
        }
        if self.replicates == 0 {
            return Err(Error::config("replicates", "must be at least 1"));
        }
        let (model, x, family) = self.resolve_displacement()?;
        let grid = self.resolve_grid()?;
        let tolerances = self.tolerances.apply(Tolerances::default())?;

        let needs_nonzero = !matches!(self.kind, ExperimentKind::Density | ExperimentKind::Isometry);
        if needs_nonzero && x.is_zero() {
            return Err(Error::config("displacement", "must be non-zero"));
        }
        let eval_time = match (self.kind, self.eval_time) {
            (_, Some(t)) if !(t > 0.0 && t <= grid.horizon) => {
                return Err(Error::config(
                    "eval_time",
                    format!("{t} must lie in (0, horizon]"),
                ))
            }
            (_, t) => t.unwrap_or(grid.horizon),
        };
        let lambdas = self.lambdas.clone().unwrap_or_else(|| vec![2.0, 5.0, 10.0]);
        if self.kind == ExperimentKind::Ruin {
            if lambdas.is_empty() {
                return Err(Error::config("lambdas", "need at least one level"));
            }
            if let Some(l) = lambdas.iter().find(|l| !(**l > 1.0 && l.is_finite())) {
                return Err(Error::config("lambdas", format!("{l} must exceed 1")));
            }
        }
        let needs_step = matches!(
            self.kind,
            ExperimentKind::Maximality | ExperimentKind::Infinity | ExperimentKind::Ruin
        );
        if needs_step && grid.step.is_none() {
            return Err(Error::config("grid.step", "required for this experiment kind"));
        }
        let plan = if self.kind == ExperimentKind::Infinity {
            Some(plan_blocks(&model, &x).map_err(|e| Error::config("displacement", e.to_string()))?)
        } else {
            None
        };
        Ok(Experiment {
            kind: self.kind,
            model,
            x,
            family,
            grid,
            replicates: self.replicates,
            policy: RngPolicy::new(self.seed),
            refinement: if self.bridge {
                Refinement::Bridge
            } else {
                Refinement::Grid
            },
            eval_time,
            lambdas,
            tolerances,
            overrides: self.tolerances.clone(),
            plan,
        })
    }

    fn resolve_displacement(&self) -> Result<(ModelSpec, HVector, Option<FamilyInfo>)> {
        let d = &self.displacement;
        match (&d.coefficients, &d.family) {
            (Some(_), Some(_)) => Err(Error::config(
                "displacement",
                "give either `coefficients` or `family`, not both",
            )),
            (None, None) => Err(Error::config(
                "displacement",
                "one of `coefficients` or `family` is required",
            )),
            (Some(coeffs), None) => {
                if d.count.is_some() || d.ambient.is_some() {
                    return Err(Error::config(
                        "displacement",
                        "`count` and `ambient` only apply to a family",
                    ));
                }
                let model = self.model.clone().ok_or_else(|| {
                    Error::config("model", "required with explicit coefficients")
                })?;
                let x = HVector::new(coeffs.clone())
                    .map_err(|e| Error::config("displacement.coefficients", e.to_string()))?;
                if x.len() != model.dimension() {
                    return Err(Error::config(
                        "displacement.coefficients",
                        format!(
                            "{} coefficients, model has {}",
                            x.len(),
                            model.dimension()
                        ),
                    ));
                }
                Ok((model, x, None))
            }
            (None, Some(name)) => {
                if self.model.is_some() {
                    return Err(Error::config(
                        "model",
                        "must be omitted: the family fixes the model",
                    ));
                }
                let rho = parse_family(name)?;
                let count = d
                    .count
                    .ok_or_else(|| Error::config("displacement.count", "required for a family"))?;
                let ambient = d.ambient.unwrap_or(AmbientNorm::L2);
                let (model, x) = h_divergent_geometric(rho, count, ambient)
                    .map_err(|e| Error::config("displacement", e.to_string()))?;
                Ok((model, x, Some(FamilyInfo { rho, count })))
            }
        }
    }

    fn resolve_grid(&self) -> Result<ResolvedGrid> {
        let g = &self.grid;
        if !(g.horizon.is_finite() && g.horizon > 0.0) {
            return Err(Error::config("grid.horizon", format!("{} must be positive", g.horizon)));
        }
        if let Some(step) = g.step {
            if !(step > 0.0 && step <= g.horizon) {
                return Err(Error::config("grid.step", format!("{step} must lie in (0, horizon]")));
            }
        }
        let checkpoints = g.checkpoints.clone().unwrap_or_default();
        if let Some(c) = checkpoints.iter().find(|c| !(**c > 0.0 && **c <= g.horizon)) {
            return Err(Error::config(
                "grid.checkpoints",
                format!("{c} outside (0, horizon]"),
            ));
        }
        if checkpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("grid.checkpoints", "must be strictly increasing"));
        }
        if self.kind == ExperimentKind::Infinity && checkpoints.is_empty() {
            return Err(Error::config("grid.checkpoints", "required for `infinity`"));
        }
        let times = match g.step {
            Some(step) => {
                let grid = TimeGrid::with_step(g.horizon, step)
                    .and_then(|t| t.merged(&checkpoints))
                    .map_err(|e| Error::config("grid", e.to_string()))?;
                Some(grid)
            }
            None => None,
        };
        Ok(ResolvedGrid {
            horizon: g.horizon,
            step: g.step,
            checkpoints,
            times,
        })
    }
}

pub(crate) fn parse_family(name: &str) -> Result<f64> {
    let field = "displacement.family";
    let inner = name
        .strip_prefix(FAMILY_PREFIX)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| {
            Error::config(field, format!("unknown family `{name}`, expected {FAMILY_PREFIX}(ρ)"))
        })?;
    let rho: f64 = inner
        .trim()
        .parse()
        .map_err(|_| Error::config(field, format!("`{inner}` is not a number")))?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::config(field, format!("ρ = {rho} must lie in (0, 1)")));
    }
    Ok(rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyInfo {
    pub rho: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedGrid {
    pub horizon: f64,
    pub step: Option<f64>,
    pub checkpoints: Vec<f64>,
    pub times: Option<TimeGrid>,
}

/// A validated, fully expanded experiment.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub kind: ExperimentKind,
    pub model: ModelSpec,
    pub x: HVector,
    pub family: Option<FamilyInfo>,
    pub grid: ResolvedGrid,
    pub replicates: u64,
    pub policy: RngPolicy,
    pub refinement: Refinement,
    pub eval_time: f64,
    pub lambdas: Vec<f64>,
    pub tolerances: Tolerances,
    pub overrides: ToleranceOverrides,
    pub plan: Option<BlockPlan>,
}

impl Experiment {
    pub(crate) fn times(&self) -> &TimeGrid {
        self.grid
            .times
            .as_ref()
            .expect("resolve() checked that this kind has a step")
    }
}
