//! Experiment driver: JSON configs in, `results.csv` / `summary.json` /
//! `law.csv` out.

mod config;
mod experiments;
mod output;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

pub use config::{
    DisplacementSpec, Experiment, ExperimentConfig, ExperimentKind, GridSpec, ToleranceOverrides,
    Tolerances, SCHEMA_VERSION,
};
pub use experiments::{columns, evaluate, law_curve, simulate, CheckParameters};
pub use output::{fmt_f64, render_csv, write_atomic, Table};

use crate::analysis::CheckReport;
use crate::error::{Error, Result};
use crate::parallel::with_threads;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::Config { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub kind: ExperimentKind,
    pub seed: u64,
    pub replicates: u64,
    pub parameters: CheckParameters,
    pub tolerances: Tolerances,
    pub overrides: ToleranceOverrides,
    pub aggregates: serde_json::Value,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

/// The three artifacts of a run, as text.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub results_csv: String,
    pub law_csv: String,
    pub summary: Summary,
}

impl Artifacts {
    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Runs a resolved experiment with `threads` workers.
pub fn execute(exp: &Experiment, threads: Option<usize>) -> Result<Artifacts> {
    let results_csv = with_threads(threads, || simulate(exp))?;
    let parameters = CheckParameters::of(exp);
    let (aggregates, checks) = evaluate(exp.kind, &parameters, &results_csv, &exp.tolerances)?;
    let law_csv = law_curve(exp.kind, &parameters)?;
    Ok(Artifacts {
        results_csv,
        law_csv,
        summary: Summary {
            schema: SCHEMA_VERSION,
            kind: exp.kind,
            seed: exp.policy.master_seed,
            replicates: exp.replicates,
            parameters,
            tolerances: exp.tolerances,
            overrides: exp.overrides.clone(),
            aggregates,
            pass: checks.iter().all(|c| c.pass),
            checks,
        },
    })
}

/// `bc run`: loads and validates the config, runs it, and writes the
/// artifacts into `out_dir`. Nothing is written if the config is invalid.
pub fn run(
    config_path: &Path,
    out_dir: &Path,
    seed: Option<u64>,
    threads: Option<usize>,
) -> Result<Summary> {
    let mut cfg = ExperimentConfig::load(config_path)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if threads == Some(0) {
        return Err(Error::config("threads", "must be at least 1"));
    }
    let exp = cfg.resolve()?;
    let artifacts = execute(&exp, threads)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    write_atomic(&out_dir.join("results.csv"), artifacts.results_csv.as_bytes())?;
    write_atomic(&out_dir.join("law.csv"), artifacts.law_csv.as_bytes())?;
    write_atomic(&out_dir.join("summary.json"), artifacts.summary_json().as_bytes())?;
    Ok(artifacts.summary)
}

/// `bc validate`: "OK" plus a preview of the expanded experiment.
pub fn validate(config_path: &Path) -> Result<String> {
    let exp = ExperimentConfig::load(config_path)?.resolve()?;
    Ok(preview(&exp))
}

pub fn preview(exp: &Experiment) -> String {
    let mut s = String::from("OK\n");
    let _ = writeln!(s, "kind: {}", exp.kind.name());
    let _ = writeln!(s, "replicates: {}, seed: {}", exp.replicates, exp.policy.master_seed);
    let _ = writeln!(s, "dimension K: {}", exp.x.len());
    let head: Vec<String> = exp.x.coeffs().iter().take(10).map(|a| format!("{a}")).collect();
    let more = if exp.x.len() > 10 { ", ..." } else { "" };
    let _ = writeln!(s, "coefficients: [{}{more}]", head.join(", "));
    let _ = writeln!(s, "H-norm: {}", exp.x.norm());
    if let Ok(w) = exp.model.w_norm(&exp.x) {
        let _ = writeln!(s, "W-norm: {w}");
    }
    if let Some(f) = exp.family {
        let label = if exp.x.norm() > exp.tolerances.divergence_threshold {
            "H-divergent family"
        } else {
            "H-divergent family (H-norm still below threshold at this truncation)"
        };
        let _ = writeln!(
            s,
            "{label}: h-divergent-geometric({}), alpha_k = 1, sigma_k = {}^k, K = {}",
            f.rho, f.rho, f.count
        );
    }
    if let Some(plan) = &exp.plan {
        let _ = writeln!(s, "block plan: {} blocks", plan.len());
        let _ = writeln!(s, "  n  cut  tail_W  block_W  block_H");
        let h = plan.block_h_norms();
        for n in 0..plan.len() {
            let _ = writeln!(
                s,
                "  {:<2} {:<4} {:.6e} {:.6e} {:.6e}",
                n + 1,
                plan.cuts()[n],
                plan.tails()[n],
                plan.block_w_norms()[n],
                h[n]
            );
        }
    }
    s
}
