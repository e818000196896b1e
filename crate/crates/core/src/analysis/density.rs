use crate::error::Result;
use crate::wiener_space::{dot, HVector};

/// Paley–Wiener pairing `Σ α_k γ_k` of `x` with a sample whose coefficients
/// are `theta`.
pub fn paley_wiener(x: &HVector, theta: &HVector) -> Result<f64> {
    x.inner(theta)
}

/// Log Radon–Nikodym derivative of the `x`-translate of the Gaussian
/// measure, evaluated at the sample `theta`: `Σ α_k γ_k − ½ Σ α_k²`.
pub fn cameron_martin_log_density(x: &HVector, theta: &HVector) -> Result<f64> {
    let linear = paley_wiener(x, theta)?;
    Ok(linear - 0.5 * dot(x.coeffs(), x.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::stats::{mean, sample_variance};
    use crate::simulation::{sample_paths, RngPolicy, TimeGrid};
    use proptest::prelude::*;

    fn standard_sample(k: usize, policy: RngPolicy, replicate: u64) -> HVector {
        let unit = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        sample_paths(k, &unit, policy, replicate).unwrap().state(1)
    }

    #[test]
    fn zero_shift_has_zero_log_density() {
        let theta = HVector::new(vec![0.3, -1.2, 2.5]).unwrap();
        assert_eq!(cameron_martin_log_density(&HVector::zeros(3), &theta).unwrap(), 0.0);
    }

    #[test]
    fn length_mismatch() {
        assert!(cameron_martin_log_density(&HVector::zeros(2), &HVector::zeros(3)).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let x = HVector::new(vec![0.6, -0.2, 0.5, 0.3]).unwrap();
        let policy = RngPolicy::new(17);
        let n = 100_000;
        let w: Vec<f64> = (0..n)
            .map(|r| {
                cameron_martin_log_density(&x, &standard_sample(4, policy, r))
                    .unwrap()
                    .exp()
            })
            .collect();
        let sigma = (sample_variance(&w) / n as f64).sqrt();
        assert!((mean(&w) - 1.0).abs() <= 3.0 * sigma);
    }

    #[test]
    fn linear_term_is_isometric() {
        let x = HVector::new(vec![1.0, 2.0, -0.5]).unwrap();
        let policy = RngPolicy::new(23);
        let n = 10_000;
        let lin: Vec<f64> = (0..n)
            .map(|r| paley_wiener(&x, &standard_sample(3, policy, r)).unwrap())
            .collect();
        let rel = sample_variance(&lin) / x.norm_sq() - 1.0;
        assert!(rel.abs() <= 3.0 * (2.0 / (n as f64 - 1.0)).sqrt());
    }

    proptest! {
        #[test]
        fn additive_over_orthogonal_pieces(
            coeffs in prop::collection::vec(-3.0f64..3.0, 2..20),
            theta in prop::collection::vec(-3.0f64..3.0, 20),
            cut in 1usize..19,
        ) {
            let k = coeffs.len();
            let cut = cut.min(k - 1) + 1;
            let x = HVector::new(coeffs).unwrap();
            let theta = HVector::new(theta[..k].to_vec()).unwrap();
            let a = x.project_block(1, cut).unwrap();
            let b = x.project_block(cut, k + 1).unwrap();
            let whole = cameron_martin_log_density(&x, &theta).unwrap();
            let parts = cameron_martin_log_density(&a, &theta).unwrap()
                + cameron_martin_log_density(&b, &theta).unwrap();
            prop_assert!((whole - parts).abs() <= 1e-12 * whole.abs().max(1.0));
        }
    }
}
