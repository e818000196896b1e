use rand::Rng;
use rand_distr::StandardNormal;

use super::rng::{RngPolicy, Stream};
use crate::error::{Error, Result};

/// First time a rate-1 Brownian motion started at `a > 0` hits 0, drawn
/// exactly as `a² / Z²`.
pub fn sample_first_passage(a: f64, policy: RngPolicy, replicate: u64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::param("a", format!("{a} must be positive")));
    }
    let mut rng = policy.stream(replicate, Stream::FirstPassage);
    let z = loop {
        let z: f64 = rng.sample(StandardNormal);
        if z != 0.0 {
            break z;
        }
    };
    Ok(a * a / (z * z))
}
