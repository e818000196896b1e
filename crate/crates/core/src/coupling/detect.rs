use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::simulation::bridge::{crossing_probability, first_hit_time};
use crate::simulation::{RngPolicy, Stream};

/// How a coupling time is located between grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refinement {
    /// First grid time at which the projection has reached its level.
    Grid,
    /// Also catch crossings between grid points with an exact bridge draw
    /// and sample the crossing time inside the interval.
    #[default]
    Bridge,
}

/// Watches `y(t) = ⟨x, B(t)⟩`, a Brownian motion of rate `‖x‖²`, for its
/// first passage through `½‖x‖²`.
pub(crate) struct CrossingDetector {
    level: f64,
    rate: f64,
    rng: Option<ChaCha8Rng>,
}

impl CrossingDetector {
    pub(crate) fn new(
        norm_sq: f64,
        refinement: Refinement,
        policy: RngPolicy,
        replicate: u64,
        first_index: usize,
    ) -> Self {
        let rng = match refinement {
            Refinement::Grid => None,
            Refinement::Bridge => Some(policy.stream(replicate, Stream::Bridge(first_index))),
        };
        CrossingDetector {
            level: 0.5 * norm_sq,
            rate: norm_sq,
            rng,
        }
    }

    /// Coupling time in `(t0, t1]`, if the projection reaches the level there.
    pub(crate) fn step(&mut self, t0: f64, y0: f64, t1: f64, y1: f64) -> Option<f64> {
        let gap0 = self.level - y0;
        let h = t1 - t0;
        if y1 >= self.level {
            return Some(match &mut self.rng {
                None => t1,
                Some(rng) => t0 + first_hit_time(gap0, y1 - y0, self.rate, h, rng),
            });
        }
        let rng = self.rng.as_mut()?;
        let gap1 = self.level - y1;
        let p = crossing_probability(gap0, gap1, self.rate, h);
        if p > 0.0 && rng.random::<f64>() < p {
            // Reflect the endpoint through the level: same first hit.
            Some(t0 + first_hit_time(gap0, gap0 + gap1, self.rate, h, rng))
        } else {
            None
        }
    }
}
