use rand::Rng;

use crate::error::{Error, Result};
use crate::simulation::bridge::{bridge_maximum, crossing_probability, first_hit_time};
use crate::simulation::{PathStream, RngPolicy, Stream, TimeGrid};
use crate::wiener_space::HVector;

/// Running supremum of the distance factor `M(t) = 1 − 2⟨x, B(t)⟩/‖x‖²`
/// up to absorption at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorSupremum {
    pub sup: f64,
    /// Stopped early because `sup` reached the cap.
    pub capped: bool,
    pub absorbed_at: Option<f64>,
}

impl FactorSupremum {
    /// Whether `{sup M ≥ λ}` was decided by the run.
    pub fn decides(&self, lambda: f64) -> bool {
        self.sup >= lambda || self.absorbed_at.is_some()
    }
}

/// Simulates `M` on `grid` with exact bridge maxima between grid points,
/// stopping at absorption, at the horizon, or once `sup ≥ cap`.
///
/// `M` is a Brownian motion of rate `4/‖x‖²` from 1; the crossing of 0 and
/// the interval maximum are drawn as independent bridge events, which is
/// exact away from 0 where the supremum matters.
pub fn factor_supremum(
    x: &HVector,
    grid: &TimeGrid,
    policy: RngPolicy,
    replicate: u64,
    cap: f64,
) -> Result<FactorSupremum> {
    let norm_sq = x.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::ZeroReflection);
    }
    if !(cap > 1.0) {
        return Err(Error::param("cap", format!("{cap} must exceed 1")));
    }
    let rate = 4.0 / norm_sq;
    let mut rng = policy.stream(replicate, Stream::Bridge(1));
    let mut paths = PathStream::new(0..x.len(), grid, policy, replicate);
    let mut sup = 1.0f64;
    let (mut t0, mut m0) = (0.0, 1.0);
    while paths.advance() {
        let t1 = paths.time();
        let y: f64 = x
            .coeffs()
            .iter()
            .zip(paths.state())
            .map(|(a, b)| a * b)
            .sum();
        let m1 = 1.0 - 2.0 * y / norm_sq;
        let h = t1 - t0;
        let hit = if m1 <= 0.0 {
            Some(t0 + first_hit_time(m0, m0 - m1, rate, h, &mut rng))
        } else {
            let p = crossing_probability(m0, m1, rate, h);
            (p > 0.0 && rng.random::<f64>() < p)
                .then(|| t0 + first_hit_time(m0, m0 + m1, rate, h, &mut rng))
        };
        match hit {
            Some(t_hit) => {
                sup = sup.max(bridge_maximum(m0, 0.0, rate, t_hit - t0, &mut rng));
                return Ok(FactorSupremum {
                    sup,
                    capped: sup >= cap,
                    absorbed_at: Some(t_hit),
                });
            }
            None => {
                sup = sup.max(bridge_maximum(m0, m1, rate, h, &mut rng));
                if sup >= cap {
                    return Ok(FactorSupremum {
                        sup,
                        capped: true,
                        absorbed_at: None,
                    });
                }
            }
        }
        t0 = t1;
        m0 = m1;
    }
    Ok(FactorSupremum {
        sup,
        capped: false,
        absorbed_at: None,
    })
}
