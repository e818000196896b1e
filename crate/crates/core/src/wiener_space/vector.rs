use crate::error::{Error, Result};

/// Coordinates of a Cameron–Martin vector against the H-orthonormal basis
/// `e_1, e_2, …`. Coefficient `i` (1-based) is stored at slot `i - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HVector(Vec<f64>);

impl HVector {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(HVector(coeffs))
    }

    pub fn zeros(len: usize) -> Self {
        HVector(vec![0.0; len])
    }

    /// Unit vector `e_index` (1-based) in a space of `len` coefficients.
    pub fn basis(len: usize, index: usize) -> Result<Self> {
        if index == 0 || index > len {
            return Err(Error::InvalidRange {
                lo: index,
                hi: index + 1,
                len,
            });
        }
        let mut v = vec![0.0; len];
        v[index - 1] = 1.0;
        Ok(HVector(v))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Cameron–Martin inner product `Σ α_k β_k`.
    pub fn inner(&self, other: &HVector) -> Result<f64> {
        other.check_len(self.len())?;
        Ok(dot(&self.0, &other.0))
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.0, &self.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Keeps coefficients with 1-based index in `[lo, hi)` and zeroes the rest.
    /// `hi` may be one past the last index.
    pub fn project_block(&self, lo: usize, hi: usize) -> Result<HVector> {
        if lo == 0 || lo > hi || hi > self.len() + 1 {
            return Err(Error::InvalidRange {
                lo,
                hi,
                len: self.len(),
            });
        }
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| if (lo - 1..hi - 1).contains(&i) { c } else { 0.0 })
            .collect();
        Ok(HVector(coeffs))
    }

    pub fn scale(&self, factor: f64) -> HVector {
        HVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &HVector) -> Result<HVector> {
        other.check_len(self.len())?;
        Ok(HVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &HVector) -> Result<HVector> {
        other.check_len(self.len())?;
        Ok(HVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
