use serde::Serialize;

use super::stats::binomial_sigma;
use crate::error::{Error, Result};

/// Empirical `P[sup M ≥ λ]` against the gambler's-ruin value `1/λ` for a
/// Brownian motion started at 1 and absorbed at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuinReport {
    pub lambda: f64,
    pub n: usize,
    pub hits: usize,
    pub empirical: f64,
    pub target: f64,
    pub std_error: f64,
    pub pass: bool,
}

pub fn ruin_check(lambda: f64, sup_draws: &[f64]) -> Result<RuinReport> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", format!("{lambda} must exceed 1")));
    }
    if sup_draws.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = sup_draws.len();
    let hits = sup_draws.iter().filter(|&&s| s >= lambda).count();
    let target = 1.0 / lambda;
    let empirical = hits as f64 / n as f64;
    let std_error = binomial_sigma(target, n);
    Ok(RuinReport {
        lambda,
        n,
        hits,
        empirical,
        target,
        std_error,
        pass: (empirical - target).abs() <= 3.0 * std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        let draws: Vec<f64> = (1..=1000).map(|i| 1000.0 / i as f64).collect();
        let r2 = ruin_check(2.0, &draws).unwrap();
        assert_eq!(r2.target, 0.5);
        assert_eq!(r2.hits, 500);
        assert!(r2.pass);
        let r10 = ruin_check(10.0, &draws).unwrap();
        assert_eq!(r10.target, 0.1);
        assert!(r10.pass);
        let near = ruin_check(1.0 + 1e-9, &draws).unwrap();
        assert!(near.target > 0.999_999);
    }

    #[test]
    fn errors_and_failures() {
        assert!(ruin_check(1.0, &[2.0]).is_err());
        assert!(matches!(ruin_check(2.0, &[]), Err(Error::EmptySample)));
        let r = ruin_check(2.0, &vec![0.5; 1000]).unwrap();
        assert!(!r.pass);
    }
}
