use crate::error::{Error, Result};

/// Strictly increasing simulation times starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        match times.first() {
            None => return Err(Error::InvalidGrid("grid is empty".into())),
            Some(&t0) if t0 != 0.0 => {
                return Err(Error::InvalidGrid(format!("grid starts at {t0}, not 0")))
            }
            _ => {}
        }
        if let Some(t) = times.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite time {t}")));
        }
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(format!(
                "times not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(TimeGrid { times })
    }

    /// `steps + 1` equally spaced times on `[0, horizon]`, ending exactly at
    /// `horizon`.
    pub fn uniform(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidGrid(format!("horizon {horizon} must be positive")));
        }
        if steps == 0 {
            return Err(Error::InvalidGrid("need at least one step".into()));
        }
        let n = steps as f64;
        Self::new((0..=steps).map(|i| horizon * (i as f64 / n)).collect())
    }

    /// Uniform grid with step as close as possible to `step` that lands on
    /// `horizon`.
    pub fn with_step(horizon: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid(format!("step {step} must be positive")));
        }
        let steps = (horizon / step).round().max(1.0);
        if steps > 1e9 {
            return Err(Error::InvalidGrid(format!("{steps} steps is too many")));
        }
        Self::uniform(horizon, steps as usize)
    }

    /// Adds `extra` times in `(0, horizon]`, keeping order and dropping
    /// duplicates.
    pub fn merged(&self, extra: &[f64]) -> Result<Self> {
        let mut times = self.times.clone();
        for &t in extra {
            if !(t > 0.0 && t <= self.horizon()) {
                return Err(Error::InvalidGrid(format!(
                    "checkpoint {t} outside (0, {}]",
                    self.horizon()
                )));
            }
            times.push(t);
        }
        times.sort_by(f64::total_cmp);
        times.dedup();
        Self::new(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("grid is non-empty")
    }

    /// Position of an exact grid time.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times.binary_search_by(|s| s.total_cmp(&t)).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TimeGrid::new(vec![]).is_err());
        assert!(TimeGrid::new(vec![0.1, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.2, 0.2]).is_err());
        assert!(TimeGrid::new(vec![0.0, f64::NAN]).is_err());
        assert!(TimeGrid::new(vec![0.0]).is_ok());
    }

    #[test]
    fn uniform_grid_hits_horizon_and_dyadic_checkpoints() {
        let g = TimeGrid::with_step(256.0, 1.0 / 64.0).unwrap();
        assert_eq!(g.len(), 256 * 64 + 1);
        assert_eq!(g.horizon(), 256.0);
        for c in [1.0, 4.0, 16.0, 64.0, 256.0] {
            assert!(g.index_of(c).is_some());
        }
        let g = TimeGrid::with_step(1.0, 1e-3).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.horizon(), 1.0);
    }

    #[test]
    fn merging_checkpoints() {
        let g = TimeGrid::uniform(1.0, 3).unwrap().merged(&[0.5, 1.0]).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.index_of(0.5), Some(2));
        assert!(TimeGrid::uniform(1.0, 3).unwrap().merged(&[2.0]).is_err());
    }
}
