use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::grid::TimeGrid;
use super::rng::{RngPolicy, Stream};
use crate::error::{Error, Result};
use crate::wiener_space::HVector;

#[inline]
fn gaussian_step(rng: &mut ChaCha8Rng, dt: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    dt.sqrt() * z
}

/// Realised coefficient Brownian motions `β_k(t_i)`, stored row-major with
/// one row per coefficient (0-based slot `k` holds basis index `k + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct PathBundle {
    coefficients: usize,
    steps: usize,
    values: Vec<f64>,
    replicate: u64,
    policy: RngPolicy,
}

impl PathBundle {
    pub fn coefficients(&self) -> usize {
        self.coefficients
    }

    /// Number of grid times per row.
    pub fn grid_len(&self) -> usize {
        self.steps
    }

    pub fn replicate(&self) -> u64 {
        self.replicate
    }

    pub fn policy(&self) -> RngPolicy {
        self.policy
    }

    pub fn row(&self, slot: usize) -> &[f64] {
        &self.values[slot * self.steps..(slot + 1) * self.steps]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, slot: usize, time_index: usize) -> f64 {
        self.values[slot * self.steps + time_index]
    }

    /// `B(t_i)` as a Cameron–Martin coordinate vector.
    pub fn state(&self, time_index: usize) -> HVector {
        HVector::new(
            (0..self.coefficients)
                .map(|k| self.value(k, time_index))
                .collect(),
        )
        .expect("Gaussian paths are finite")
    }

    pub(crate) fn from_parts(
        coefficients: usize,
        steps: usize,
        values: Vec<f64>,
        replicate: u64,
        policy: RngPolicy,
    ) -> Self {
        debug_assert_eq!(values.len(), coefficients * steps);
        PathBundle {
            coefficients,
            steps,
            values,
            replicate,
            policy,
        }
    }
}

/// Draws `K` independent Brownian motions on `grid` with exact Gaussian
/// increments.
pub fn sample_paths(
    coefficients: usize,
    grid: &TimeGrid,
    policy: RngPolicy,
    replicate: u64,
) -> Result<PathBundle> {
    if coefficients == 0 {
        return Err(Error::param("K", "need at least one coefficient"));
    }
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    let times = grid.times();
    let steps = times.len();
    let mut values = Vec::with_capacity(coefficients * steps);
    for slot in 0..coefficients {
        let mut rng = policy.stream(replicate, Stream::Coefficient(slot));
        let mut level = 0.0;
        values.push(level);
        for w in times.windows(2) {
            level += gaussian_step(&mut rng, w[1] - w[0]);
            values.push(level);
        }
    }
    Ok(PathBundle::from_parts(
        coefficients,
        steps,
        values,
        replicate,
        policy,
    ))
}

/// Lazily generates the same paths as [`sample_paths`], one grid time at a
/// time, for a contiguous range of coefficient slots. Lets callers stop as
/// soon as an event has been decided.
pub struct PathStream<'g> {
    times: &'g [f64],
    index: usize,
    rngs: Vec<ChaCha8Rng>,
    state: Vec<f64>,
}

impl<'g> PathStream<'g> {
    pub fn new(
        slots: std::ops::Range<usize>,
        grid: &'g TimeGrid,
        policy: RngPolicy,
        replicate: u64,
    ) -> Self {
        let rngs: Vec<_> = slots
            .map(|slot| policy.stream(replicate, Stream::Coefficient(slot)))
            .collect();
        let state = vec![0.0; rngs.len()];
        PathStream {
            times: grid.times(),
            index: 0,
            rngs,
            state,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn time(&self) -> f64 {
        self.times[self.index]
    }

    pub fn state(&self) -> &[f64] {
        &self.state
    }

    /// Moves to the next grid time; `false` once the horizon was reached.
    pub fn advance(&mut self) -> bool {
        if self.index + 1 >= self.times.len() {
            return false;
        }
        let dt = self.times[self.index + 1] - self.times[self.index];
        for (level, rng) in self.state.iter_mut().zip(&mut self.rngs) {
            *level += gaussian_step(rng, dt);
        }
        self.index += 1;
        true
    }
}
