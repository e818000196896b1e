use super::detect::{CrossingDetector, Refinement};
use super::plan::BlockPlan;
use crate::error::{Error, Result};
use crate::simulation::{sample_paths, PathBundle, PathStream, RngPolicy, TimeGrid};
use crate::wiener_space::{HVector, ModelSpec};

/// Trajectory of one (block) reflection coupling on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingResult {
    pub replicate: u64,
    pub times: Vec<f64>,
    /// `‖B̃(t_i) − B(t_i)‖_W`.
    pub d_w: Vec<f64>,
    /// `‖B̃(t_i) − B(t_i)‖_H`.
    pub d_h: Vec<f64>,
    /// Distance factor `s_n(t_i)` per block, frozen at 0 once coupled.
    pub factors: Vec<Vec<f64>>,
    /// Coupling time per block; `None` if still apart at the horizon.
    pub coupling_times: Vec<Option<f64>>,
    pub coupled: bool,
}

impl CouplingResult {
    /// Blocks not yet coupled at grid time `i`.
    pub fn uncoupled_at(&self, i: usize) -> usize {
        let t = self.times[i];
        self.coupling_times
            .iter()
            .filter(|c| c.is_none_or(|tc| tc > t))
            .count()
    }

    /// Latest block coupling time, when every block coupled.
    pub fn final_coupling_time(&self) -> Option<f64> {
        self.coupling_times
            .iter()
            .try_fold(0.0f64, |m, c| c.map(|t| m.max(t)))
    }

    /// `Δ(t_i) = Σ_n s_n(t_i) x_n`.
    pub fn displacement(&self, plan: &BlockPlan, i: usize) -> HVector {
        HVector::new(displacement_coeffs(plan, &self.factors, i)).expect("finite factors")
    }

    /// Coefficient paths of the partner `B̃`, row-major like the bundle.
    /// Coordinates of coupled blocks are copied from `B` verbatim.
    pub fn partner_paths(&self, plan: &BlockPlan, bundle: &PathBundle) -> Vec<f64> {
        let steps = bundle.grid_len();
        let mut out = bundle.values().to_vec();
        for (n, block) in plan.blocks().iter().enumerate() {
            let (lo, hi) = plan.range(n + 1);
            for i in 0..steps {
                let s = self.factors[n][i];
                if s == 0.0 {
                    continue;
                }
                for k in lo - 1..hi - 1 {
                    out[k * steps + i] += s * block.coeffs()[k];
                }
            }
        }
        out
    }
}

fn displacement_coeffs(plan: &BlockPlan, factors: &[Vec<f64>], i: usize) -> Vec<f64> {
    let mut delta = vec![0.0; plan.dimension()];
    for (n, block) in plan.blocks().iter().enumerate() {
        let s = factors[n][i];
        if s == 0.0 {
            continue;
        }
        let (lo, hi) = plan.range(n + 1);
        for k in lo - 1..hi - 1 {
            delta[k] = s * block.coeffs()[k];
        }
    }
    delta
}

struct BlockDriver<'a> {
    block: &'a HVector,
    lo: usize,
    hi: usize,
    norm_sq: f64,
}

impl BlockDriver<'_> {
    fn projection(&self, bundle: &PathBundle, i: usize) -> f64 {
        (self.lo - 1..self.hi - 1)
            .map(|k| self.block.coeffs()[k] * bundle.value(k, i))
            .sum()
    }
}

/// Runs an independent reflection coupling on every block of `plan`, each
/// driven by the coefficient paths of its own support.
pub fn run_block_coupling_on(
    model: &ModelSpec,
    plan: &BlockPlan,
    grid: &TimeGrid,
    bundle: &PathBundle,
    refinement: Refinement,
) -> Result<CouplingResult> {
    if bundle.coefficients() != plan.dimension() || bundle.grid_len() != grid.len() {
        return Err(Error::PlanMismatch(format!(
            "bundle is {} x {}, plan needs {} x {}",
            bundle.coefficients(),
            bundle.grid_len(),
            plan.dimension(),
            grid.len()
        )));
    }
    let times = grid.times();
    let mut factors = Vec::with_capacity(plan.len());
    let mut coupling_times = Vec::with_capacity(plan.len());
    for (n, block) in plan.blocks().iter().enumerate() {
        let (lo, hi) = plan.range(n + 1);
        let driver = BlockDriver {
            block,
            lo,
            hi,
            norm_sq: block.norm_sq(),
        };
        let mut s = vec![0.0; times.len()];
        if driver.norm_sq == 0.0 {
            factors.push(s);
            coupling_times.push(Some(0.0));
            continue;
        }
        let mut detector = CrossingDetector::new(
            driver.norm_sq,
            refinement,
            bundle.policy(),
            bundle.replicate(),
            lo,
        );
        let mut coupled_at = None;
        let mut y_prev = 0.0;
        s[0] = 1.0;
        for i in 1..times.len() {
            let y = driver.projection(bundle, i);
            if let Some(tc) = detector.step(times[i - 1], y_prev, times[i], y) {
                coupled_at = Some(tc);
                break;
            }
            s[i] = 1.0 - 2.0 * y / driver.norm_sq;
            y_prev = y;
        }
        factors.push(s);
        coupling_times.push(coupled_at);
    }

    let mut d_w = Vec::with_capacity(times.len());
    let mut d_h = Vec::with_capacity(times.len());
    let h_sq: Vec<f64> = plan.blocks().iter().map(HVector::norm_sq).collect();
    for i in 0..times.len() {
        if factors.iter().all(|s| s[i] == 0.0) {
            d_w.push(0.0);
            d_h.push(0.0);
            continue;
        }
        let delta = displacement_coeffs(plan, &factors, i);
        d_w.push(model.w_norm_unchecked(&delta));
        d_h.push(
            factors
                .iter()
                .zip(&h_sq)
                .map(|(s, h)| s[i] * s[i] * h)
                .sum::<f64>()
                .sqrt(),
        );
    }
    let coupled = coupling_times.iter().all(Option::is_some);
    Ok(CouplingResult {
        replicate: bundle.replicate(),
        times: times.to_vec(),
        d_w,
        d_h,
        factors,
        coupling_times,
        coupled,
    })
}

/// Block coupling at time ∞: simulates the driving paths, then couples each
/// block of `plan` by its own reflection.
pub fn run_block_coupling(
    model: &ModelSpec,
    x: &HVector,
    plan: &BlockPlan,
    grid: &TimeGrid,
    policy: RngPolicy,
    replicate: u64,
    refinement: Refinement,
) -> Result<CouplingResult> {
    plan.check_against(model, x)?;
    let bundle = sample_paths(x.len(), grid, policy, replicate)?;
    run_block_coupling_on(model, plan, grid, &bundle, refinement)
}

/// Reflection coupling of `B` from 0 with `B̃ = x + R_x(B)` from `x`, until
/// they meet.
pub fn run_reflection_coupling(
    model: &ModelSpec,
    x: &HVector,
    grid: &TimeGrid,
    policy: RngPolicy,
    replicate: u64,
    refinement: Refinement,
) -> Result<CouplingResult> {
    if x.is_zero() {
        return Err(Error::ZeroReflection);
    }
    let plan = BlockPlan::single_block(model, x)?;
    run_block_coupling(model, x, &plan, grid, policy, replicate, refinement)
}

/// First time `⟨x, B(t)⟩` reaches `½‖x‖²` along a simulated bundle.
pub fn detect_coupling_time(
    x: &HVector,
    bundle: &PathBundle,
    grid: &TimeGrid,
    refinement: Refinement,
) -> Result<Option<f64>> {
    let norm_sq = x.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::ZeroReflection);
    }
    if bundle.coefficients() != x.len() || bundle.grid_len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: bundle.coefficients(),
            got: x.len(),
        });
    }
    let driver = BlockDriver {
        block: x,
        lo: 1,
        hi: x.len() + 1,
        norm_sq,
    };
    let mut detector =
        CrossingDetector::new(norm_sq, refinement, bundle.policy(), bundle.replicate(), 1);
    let times = grid.times();
    let mut y_prev = 0.0;
    for i in 1..times.len() {
        let y = driver.projection(bundle, i);
        if let Some(t) = detector.step(times[i - 1], y_prev, times[i], y) {
            return Ok(Some(t));
        }
        y_prev = y;
    }
    Ok(None)
}

/// Same result as [`detect_coupling_time`] on the bundle for this
/// replicate, but generates the paths lazily and stops at the coupling.
pub fn stream_coupling_time(
    x: &HVector,
    grid: &TimeGrid,
    policy: RngPolicy,
    replicate: u64,
    refinement: Refinement,
) -> Result<Option<f64>> {
    let norm_sq = x.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::ZeroReflection);
    }
    let mut detector = CrossingDetector::new(norm_sq, refinement, policy, replicate, 1);
    let mut paths = PathStream::new(0..x.len(), grid, policy, replicate);
    let mut y_prev = 0.0;
    let mut t_prev = paths.time();
    while paths.advance() {
        let y: f64 = x
            .coeffs()
            .iter()
            .zip(paths.state())
            .map(|(a, b)| a * b)
            .sum();
        if let Some(t) = detector.step(t_prev, y_prev, paths.time(), y) {
            return Ok(Some(t));
        }
        y_prev = y;
        t_prev = paths.time();
    }
    Ok(None)
}
