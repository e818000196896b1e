use serde::Serialize;

use super::laws::LawSpec;
use crate::error::{Error, Result};

/// Sorted draws, some of which may be censored at an observation horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    draws: Vec<f64>,
    censored: Vec<bool>,
}

impl EmpiricalSample {
    pub fn new(mut draws: Vec<f64>) -> Self {
        draws.sort_by(f64::total_cmp);
        let censored = vec![false; draws.len()];
        EmpiricalSample { draws, censored }
    }

    /// `None` marks an event not observed by `horizon`; it is stored as a
    /// censored draw carrying the horizon value.
    pub fn with_censoring(observations: impl IntoIterator<Item = Option<f64>>, horizon: f64) -> Self {
        let mut pairs: Vec<(f64, bool)> = observations
            .into_iter()
            .map(|o| o.map_or((horizon, true), |t| (t, false)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let (draws, censored) = pairs.into_iter().unzip();
        EmpiricalSample { draws, censored }
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn draws(&self) -> &[f64] {
        &self.draws
    }

    pub fn censored_count(&self) -> usize {
        self.censored.iter().filter(|c| **c).count()
    }

    pub fn censored_fraction(&self) -> f64 {
        self.censored_count() as f64 / self.len() as f64
    }

    fn horizon(&self) -> Option<f64> {
        self.draws
            .iter()
            .zip(&self.censored)
            .find(|(_, c)| **c)
            .map(|(d, _)| *d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsOutcome {
    pub statistic: f64,
    pub n: usize,
    pub censored: usize,
}

/// Kolmogorov–Smirnov distance between a sample and a law's CDF.
///
/// Censored draws do not contribute jumps but stay in the denominator, so
/// the empirical curve estimates the unconditional CDF up to the horizon,
/// and the comparison stops there.
pub fn ks_statistic(sample: &EmpiricalSample, law: &LawSpec) -> Result<KsOutcome> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let censored = sample.censored_count();
    if censored == sample.len() {
        return Err(Error::AllCensored);
    }
    let n = sample.len() as f64;
    let mut d: f64 = 0.0;
    let mut seen = 0usize;
    for (x, c) in sample.draws.iter().zip(&sample.censored) {
        if *c {
            continue;
        }
        let f = law.cdf(*x)?;
        d = d.max(f - seen as f64 / n);
        seen += 1;
        d = d.max(seen as f64 / n - f);
    }
    if let Some(h) = sample.horizon() {
        d = d.max(law.cdf(h)? - seen as f64 / n);
    }
    Ok(KsOutcome {
        statistic: d,
        n: sample.len(),
        censored,
    })
}

/// Asymptotic 99% critical value of the one-sample KS statistic.
pub fn ks_critical_value_99(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}
