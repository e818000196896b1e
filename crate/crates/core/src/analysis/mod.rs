//! Closed-form laws and the statistics that compare simulations to them.

mod density;
mod ks;
mod laws;
mod ruin;
pub mod stats;

use serde::Serialize;

pub use density::{cameron_martin_log_density, paley_wiener};
pub use ks::{ks_critical_value_99, ks_statistic, EmpiricalSample, KsOutcome};
pub use laws::{
    first_passage_cdf, join_mass, max_coupling_prob, std_normal_tail, total_variation, LawSpec,
};
pub use ruin::{ruin_check, RuinReport};

/// One pass/fail comparison, as written to `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub n: usize,
    pub statistic: f64,
    pub critical_value: f64,
    pub pass: bool,
}

impl CheckReport {
    /// Passes when `statistic ≤ critical_value`.
    pub fn at_most(law: impl Into<String>, n: usize, statistic: f64, critical_value: f64) -> Self {
        CheckReport {
            law: law.into(),
            n,
            statistic,
            critical_value,
            pass: statistic <= critical_value,
        }
    }
}

impl From<RuinReport> for CheckReport {
    fn from(r: RuinReport) -> Self {
        CheckReport {
            law: format!("gamblers-ruin(lambda={})", r.lambda),
            n: r.n,
            statistic: (r.empirical - r.target).abs(),
            critical_value: 3.0 * r.std_error,
            pass: r.pass,
        }
    }
}
