use crate::error::{Error, Result};
use crate::wiener_space::{HVector, ModelSpec};

/// Partition of the basis indices into consecutive blocks `[r_{n-1}, r_n)`
/// whose partial sums approach the displacement in `W` at rate `2^{-n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPlan {
    cuts: Vec<usize>,
    blocks: Vec<HVector>,
    tails: Vec<f64>,
    block_w_norms: Vec<f64>,
}

impl BlockPlan {
    /// Number of blocks `N`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Cut indices `r_0 = 1 < r_1 < … < r_N = K + 1` (1-based).
    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// Basis-index range `[lo, hi)` of block `n` (1-based block number).
    pub fn range(&self, n: usize) -> (usize, usize) {
        (self.cuts[n - 1], self.cuts[n])
    }

    pub fn blocks(&self) -> &[HVector] {
        &self.blocks
    }

    /// `τ_n = ‖x − (x_1 + … + x_n)‖_W` for `n = 1..=N`.
    pub fn tails(&self) -> &[f64] {
        &self.tails
    }

    pub fn block_w_norms(&self) -> &[f64] {
        &self.block_w_norms
    }

    pub fn block_h_norms(&self) -> Vec<f64> {
        self.blocks.iter().map(HVector::norm).collect()
    }

    /// Displacement dimension `K`.
    pub fn dimension(&self) -> usize {
        self.cuts.last().map_or(0, |hi| hi - 1)
    }

    /// `τ_n ≤ 2^{-n-1}` for every `n < N` and `τ_N = 0`.
    pub fn meets_tail_schedule(&self) -> bool {
        let n = self.tails.len();
        self.tails
            .iter()
            .enumerate()
            .take(n.saturating_sub(1))
            .all(|(i, &t)| t <= tail_bound(i + 1))
            && self.tails.last() == Some(&0.0)
    }

    /// `‖x_{n+1}‖_W < 2^{-n+1}` for every `n ≥ 1`.
    pub fn meets_block_bound(&self) -> bool {
        self.block_w_norms
            .iter()
            .enumerate()
            .skip(1)
            .all(|(i, &w)| w < (1.0 - i as f64).exp2())
    }

    /// Sum of the blocks must reproduce `x` coefficient for coefficient.
    pub fn check_against(&self, model: &ModelSpec, x: &HVector) -> Result<()> {
        if model.dimension() != x.len() || self.dimension() != x.len() {
            return Err(Error::PlanMismatch(format!(
                "plan covers {} coefficients, displacement has {}, model has {}",
                self.dimension(),
                x.len(),
                model.dimension()
            )));
        }
        for (n, block) in self.blocks.iter().enumerate() {
            let (lo, hi) = self.range(n + 1);
            if *block != x.project_block(lo, hi)? {
                return Err(Error::PlanMismatch(format!(
                    "block {} differs from the displacement on [{lo}, {hi})",
                    n + 1
                )));
            }
        }
        Ok(())
    }

    /// Plan with one block holding all of `x`.
    pub fn single_block(model: &ModelSpec, x: &HVector) -> Result<Self> {
        let w = model.w_norm(x)?;
        Ok(BlockPlan {
            cuts: vec![1, x.len() + 1],
            blocks: vec![x.clone()],
            tails: vec![0.0],
            block_w_norms: vec![w],
        })
    }
}

fn tail_bound(n: usize) -> f64 {
    (-(n as f64) - 1.0).exp2()
}

/// Greedy plan: each cut `r_n` is the smallest index past `r_{n-1}` whose
/// `W`-tail is at most `2^{-n-1}`; once the tail vanishes the final block
/// absorbs the remaining indices.
pub fn plan_blocks(model: &ModelSpec, x: &HVector) -> Result<BlockPlan> {
    let k = x.len();
    model.w_norm(x)?;
    if x.is_zero() {
        return Err(Error::ZeroReflection);
    }
    let tail = |r: usize| {
        let mut c = x.coeffs().to_vec();
        c[..r - 1].iter_mut().for_each(|v| *v = 0.0);
        model.w_norm_unchecked(&c)
    };
    let mut cuts = vec![1];
    let mut tails = Vec::new();
    let mut n = 1;
    loop {
        let prev = *cuts.last().unwrap();
        let bound = tail_bound(n);
        let (cut, tau) = (prev + 1..=k + 1)
            .map(|r| (r, tail(r)))
            .find(|&(_, t)| t <= bound)
            .ok_or(Error::TruncationInsufficient { block: n })?;
        if tau == 0.0 {
            cuts.push(k + 1);
            tails.push(0.0);
            break;
        }
        cuts.push(cut);
        tails.push(tau);
        n += 1;
    }
    let blocks: Vec<HVector> = cuts
        .windows(2)
        .map(|w| x.project_block(w[0], w[1]))
        .collect::<Result<_>>()?;
    let block_w_norms = blocks
        .iter()
        .map(|b| model.w_norm(b))
        .collect::<Result<_>>()?;
    let plan = BlockPlan {
        cuts,
        blocks,
        tails,
        block_w_norms,
    };
    if !plan.meets_block_bound() {
        // The triangle inequality makes this unreachable for a genuine norm.
        return Err(Error::TruncationInsufficient { block: plan.len() });
    }
    Ok(plan)
}
