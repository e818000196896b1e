//! Exact Brownian-bridge events between two grid points.
//!
//! All functions take a Brownian motion of variance rate `rate` observed at
//! both ends of an interval of length `h`.

use rand::Rng;
use rand_distr::{Distribution, InverseGaussian};

/// Probability that the bridge touched a level it starts `gap0` and ends
/// `gap1` below (both gaps non-negative).
pub fn crossing_probability(gap0: f64, gap1: f64, rate: f64, h: f64) -> f64 {
    if gap0 <= 0.0 || gap1 <= 0.0 {
        return 1.0;
    }
    (-2.0 * gap0 * gap1 / (rate * h)).exp()
}

/// First time in `(0, h]` at which a bridge from 0 reaches level
/// `gap > 0`, given it ends at `end ≥ gap`.
///
/// A bridge that only touches the level and comes back is handled by
/// passing the reflected endpoint `2·gap − end`; the first hitting time is
/// the same for both paths.
pub fn first_hit_time<R: Rng + ?Sized>(gap: f64, end: f64, rate: f64, h: f64, rng: &mut R) -> f64 {
    debug_assert!(gap > 0.0 && end >= gap);
    let scale = rate.sqrt();
    let a = gap / scale;
    let excess = (end - gap) / scale;
    if excess <= 1e-12 * a {
        return h;
    }
    // Under the time change u = s·h/(h − s) the bridge becomes a Brownian
    // motion with drift excess/h hitting a, whose hitting time is inverse
    // Gaussian.
    let ig = InverseGaussian::new(a * h / excess, a * a).expect("positive parameters");
    let u: f64 = ig.sample(rng);
    if !u.is_finite() {
        return h;
    }
    (u * h / (h + u)).min(h)
}

/// Exact draw of the running maximum of a bridge from `y0` to `y1`.
pub fn bridge_maximum<R: Rng + ?Sized>(y0: f64, y1: f64, rate: f64, h: f64, rng: &mut R) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    let d = y1 - y0;
    0.5 * (y0 + y1 + (d * d - 2.0 * rate * h * u.ln()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Density of the first hitting time of level a for a bridge from 0 to b,
    // up to normalisation: Lévy density times the Gaussian kernel of the
    // remaining displacement.
    fn hit_density(s: f64, a: f64, b: f64, h: f64) -> f64 {
        let levy = a / (2.0 * std::f64::consts::PI * s.powi(3)).sqrt() * (-a * a / (2.0 * s)).exp();
        let rest = h - s;
        let kernel = (-(b - a).powi(2) / (2.0 * rest)).exp() / rest.sqrt();
        levy * kernel
    }

    fn quadrature_mean(a: f64, b: f64, h: f64) -> f64 {
        let n = 200_000;
        let ds = h / n as f64;
        let (mut mass, mut first) = (0.0, 0.0);
        for i in 0..n {
            let s = (i as f64 + 0.5) * ds;
            let f = hit_density(s, a, b, h);
            mass += f * ds;
            first += s * f * ds;
        }
        first / mass
    }

    #[test]
    fn hit_time_mean_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (a, b, h) in [(0.3, 0.9, 1.0), (1.0, 1.5, 2.0), (0.05, 0.2, 0.01)] {
            let n = 100_000;
            let draws: Vec<f64> = (0..n).map(|_| first_hit_time(a, b, 1.0, h, &mut rng)).collect();
            let mean = draws.iter().sum::<f64>() / n as f64;
            let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let expected = quadrature_mean(a, b, h);
            assert!(
                (mean - expected).abs() < 4.0 * (var / n as f64).sqrt(),
                "a={a} b={b} h={h}: {mean} vs {expected}"
            );
            assert!(draws.iter().all(|&d| d > 0.0 && d <= h));
        }
    }

    #[test]
    fn hit_time_respects_rate() {
        // Rate 4 over length h is the same event as rate 1 with doubled gaps.
        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        let x = first_hit_time(0.4, 1.0, 4.0, 0.5, &mut r1);
        let y = first_hit_time(0.2, 0.5, 1.0, 0.5, &mut r2);
        assert!((x - y).abs() < 1e-12);
    }

    #[test]
    fn crossing_probability_edges() {
        assert_eq!(crossing_probability(0.0, 1.0, 1.0, 1.0), 1.0);
        assert!(crossing_probability(10.0, 10.0, 1.0, 1e-3) == 0.0);
        let p = crossing_probability(0.5, 0.5, 1.0, 1.0);
        assert!((p - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn bridge_maximum_tail() {
        // P[max ≥ m] = exp(-2 m (m - y1) / (rate h)) for a bridge from 0.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 100_000;
        let m = 0.8;
        let hits = (0..n)
            .filter(|_| bridge_maximum(0.0, 0.3, 1.0, 1.0, &mut rng) >= m)
            .count();
        let p = (-2.0 * m * (m - 0.3)).exp();
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits as f64 / n as f64 - p).abs() < 4.0 * sd);
    }
}
