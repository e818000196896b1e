//! Faber–Schauder system on `[0, 1]`.
//!
//! Basis order is fixed: index 1 is the linear element `t ↦ t`; index
//! `2^j + k + 1` is the tent of level `j`, position `k` (`0 ≤ k < 2^j`). The
//! tents are primitives of L²-normalised Haar functions, so together with the
//! linear element they are orthonormal in the classical Cameron–Martin space.
//! Partial sums converge conditionally, so this order must not change.

/// Position of a tent within the Faber–Schauder hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchauderElement {
    Linear,
    Tent { level: u32, position: u64 },
}

impl SchauderElement {
    /// Element for a 1-based basis index.
    pub fn from_index(index: usize) -> Self {
        assert!(index >= 1, "basis indices are 1-based");
        if index == 1 {
            return SchauderElement::Linear;
        }
        let n = (index - 1) as u64;
        let level = 63 - n.leading_zeros();
        SchauderElement::Tent {
            level,
            position: n - (1u64 << level),
        }
    }

    pub fn eval(self, t: f64) -> f64 {
        match self {
            SchauderElement::Linear => t,
            SchauderElement::Tent { level, position } => {
                let width = (-(level as f64)).exp2();
                let left = position as f64 * width;
                let right = left + width;
                if t <= left || t >= right {
                    0.0
                } else {
                    (level as f64 / 2.0).exp2() * (t - left).min(right - t)
                }
            }
        }
    }

    /// Supremum norm on `[0, 1]`: 1 for the linear element, `2^{-j/2-1}` for a
    /// level-`j` tent.
    pub fn sup_norm(self) -> f64 {
        match self {
            SchauderElement::Linear => 1.0,
            SchauderElement::Tent { level, .. } => (-(level as f64) / 2.0 - 1.0).exp2(),
        }
    }
}

/// Values of `Σ α_i e_i` at `t = i / 2^resolution`, `i = 0..=2^resolution`.
///
/// Every tent in `coeffs` must have its peak on the grid (level < resolution).
pub(crate) fn synthesize(coeffs: &[f64], resolution: u32) -> Vec<f64> {
    let cells = 1usize << resolution;
    let step = 1.0 / cells as f64;
    let mut values: Vec<f64> = match coeffs.first() {
        Some(&a) => (0..=cells).map(|i| a * (i as f64 * step)).collect(),
        None => vec![0.0; cells + 1],
    };
    for (slot, &alpha) in coeffs.iter().enumerate().skip(1) {
        if alpha == 0.0 {
            continue;
        }
        let SchauderElement::Tent { level, position } = SchauderElement::from_index(slot + 1)
        else {
            unreachable!()
        };
        debug_assert!(level < resolution);
        let span = cells >> level;
        let start = position as usize * span;
        let slope = alpha * (level as f64 / 2.0).exp2() * step;
        for d in 1..span {
            values[start + d] += slope * d.min(span - d) as f64;
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_enumeration() {
        assert_eq!(SchauderElement::from_index(1), SchauderElement::Linear);
        assert_eq!(
            SchauderElement::from_index(2),
            SchauderElement::Tent { level: 0, position: 0 }
        );
        assert_eq!(
            SchauderElement::from_index(3),
            SchauderElement::Tent { level: 1, position: 0 }
        );
        assert_eq!(
            SchauderElement::from_index(4),
            SchauderElement::Tent { level: 1, position: 1 }
        );
        assert_eq!(
            SchauderElement::from_index(8),
            SchauderElement::Tent { level: 2, position: 3 }
        );
        assert_eq!(
            SchauderElement::from_index(9),
            SchauderElement::Tent { level: 3, position: 0 }
        );
    }

    #[test]
    fn tent_peaks() {
        for level in 0..8u32 {
            for position in [0u64, (1 << level) - 1] {
                let e = SchauderElement::Tent { level, position };
                let mid = (position as f64 + 0.5) * (-(level as f64)).exp2();
                let expected = (-(level as f64) / 2.0 - 1.0).exp2();
                assert!((e.eval(mid) - expected).abs() < 1e-15);
                assert_eq!(e.sup_norm(), expected);
            }
        }
    }

    #[test]
    fn synthesis_matches_pointwise_evaluation() {
        let coeffs = [0.3, -1.0, 0.5, 2.0, 0.25, -0.75, 1.5, 0.1];
        let resolution = 5;
        let values = synthesize(&coeffs, resolution);
        for (i, v) in values.iter().enumerate() {
            let t = i as f64 / 32.0;
            let direct: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(s, a)| a * SchauderElement::from_index(s + 1).eval(t))
                .sum();
            assert!((v - direct).abs() < 1e-14, "t = {t}");
        }
    }

    // Oracle for the tent shape: the running integral of the L²-normalised Haar
    // function, by midpoint quadrature on a fine grid.
    fn haar_primitive(level: u32, position: u64, t: f64) -> f64 {
        let n = 1 << 16;
        let width = (-(level as f64)).exp2();
        let left = position as f64 * width;
        let h = t / n as f64;
        (0..n)
            .map(|i| {
                let s = (i as f64 + 0.5) * h;
                let haar = if s < left || s >= left + width {
                    0.0
                } else if s < left + width / 2.0 {
                    (level as f64 / 2.0).exp2()
                } else {
                    -(level as f64 / 2.0).exp2()
                };
                haar * h
            })
            .sum()
    }

    #[test]
    fn tents_are_haar_primitives() {
        for (level, position) in [(0u32, 0u64), (1, 1), (2, 2), (3, 5)] {
            let e = SchauderElement::Tent { level, position };
            for t in [0.1, 0.3, 0.45, 0.6, 0.7, 0.9] {
                assert!((e.eval(t) - haar_primitive(level, position, t)).abs() < 1e-4);
            }
        }
    }
}
