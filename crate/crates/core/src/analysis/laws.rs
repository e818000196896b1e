use serde::Serialize;
use libm::erfc;

use crate::error::{Error, Result};

/// `Φ̄(u) = P[N(0, 1) > u]`.
pub fn std_normal_tail(u: f64) -> f64 {
    0.5 * erfc(u / std::f64::consts::SQRT_2)
}

fn check_non_negative(name: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0 && v.is_finite()) {
        return Err(Error::param(name, format!("{v} must be finite and non-negative")));
    }
    Ok(())
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::param(name, format!("{v} must be finite and positive")));
    }
    Ok(())
}

/// Total mass of the join of a Gaussian measure and its translate by a
/// Cameron–Martin vector of norm `hnorm`: `2 Φ̄(hnorm / 2)`.
pub fn join_mass(hnorm: f64) -> Result<f64> {
    check_non_negative("hnorm", hnorm)?;
    Ok(2.0 * std_normal_tail(hnorm / 2.0))
}

/// Total-variation distance between the two measures, `1 - join_mass`.
pub fn total_variation(hnorm: f64) -> Result<f64> {
    Ok(1.0 - join_mass(hnorm)?)
}

/// Largest possible probability of having met by time `t` for Brownian
/// motions started `hnorm` apart: `2 Φ̄(hnorm / (2√t))`.
pub fn max_coupling_prob(hnorm: f64, t: f64) -> Result<f64> {
    check_non_negative("hnorm", hnorm)?;
    check_positive("t", t)?;
    Ok(2.0 * std_normal_tail(hnorm / (2.0 * t.sqrt())))
}

/// CDF of the first time a rate-1 Brownian motion from `a` hits 0.
pub fn first_passage_cdf(a: f64, t: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_non_negative("t", t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * std_normal_tail(a / t.sqrt()))
}

/// A closed-form law that simulations are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum LawSpec {
    FirstPassage { a: f64 },
    JoinMass { hnorm: f64 },
    TvAtTime { hnorm: f64, t: f64 },
}

impl LawSpec {
    pub fn first_passage(a: f64) -> Result<Self> {
        check_positive("a", a)?;
        Ok(LawSpec::FirstPassage { a })
    }

    pub fn join_mass(hnorm: f64) -> Result<Self> {
        check_non_negative("hnorm", hnorm)?;
        Ok(LawSpec::JoinMass { hnorm })
    }

    pub fn tv_at_time(hnorm: f64, t: f64) -> Result<Self> {
        check_non_negative("hnorm", hnorm)?;
        check_positive("t", t)?;
        Ok(LawSpec::TvAtTime { hnorm, t })
    }

    /// Distribution function, for laws of a random time.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        match *self {
            LawSpec::FirstPassage { a } => first_passage_cdf(a, t),
            _ => Err(Error::NotADistribution(self.label())),
        }
    }

    /// Scalar value, for laws that are a single probability.
    pub fn value(&self) -> Option<f64> {
        match *self {
            LawSpec::FirstPassage { .. } => None,
            LawSpec::JoinMass { hnorm } => join_mass(hnorm).ok(),
            LawSpec::TvAtTime { hnorm, t } => max_coupling_prob(hnorm, t).ok().map(|p| 1.0 - p),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            LawSpec::FirstPassage { a } => format!("first-passage(a={a})"),
            LawSpec::JoinMass { hnorm } => format!("join-mass(hnorm={hnorm})"),
            LawSpec::TvAtTime { hnorm, t } => format!("tv-at-time(hnorm={hnorm},t={t})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values from a 30-digit erfc evaluation.
    const TAIL: [(f64, f64); 11] = [
        (0.0, 0.5),
        (0.125, 0.450_261_775_169_887_107_02),
        (0.25, 0.401_293_674_317_076_275_76),
        (0.5, 0.308_537_538_725_986_896_36),
        (1.0, 0.158_655_253_931_457_051_41),
        (2.0, 0.022_750_131_948_179_207_2),
        (3.0, 0.001_349_898_031_630_094_526_7),
        (5.0, 2.866_515_718_791_939_116_7e-7),
        (8.0, 6.220_960_574_271_784_123_5e-16),
        (-1.0, 0.841_344_746_068_542_948_59),
        (-3.0, 0.998_650_101_968_369_905_47),
    ];

    #[test]
    fn tail_matches_reference() {
        for (u, expected) in TAIL {
            let got = std_normal_tail(u);
            assert!(
                ((got - expected) / expected).abs() < 1e-12,
                "u = {u}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(join_mass(0.0).unwrap(), 1.0);
        assert!((join_mass(2.0).unwrap() - 0.317_310_507_862_914_1).abs() < 1e-12);
        assert!(join_mass(60.0).unwrap() < 1e-100);
        assert_eq!(max_coupling_prob(0.0, 3.0).unwrap(), 1.0);
        assert!((max_coupling_prob(1.0, 1.0).unwrap() - 0.617_075_077_451_973_8).abs() < 1e-12);
        assert!(max_coupling_prob(1.0, 1e12).unwrap() > 1.0 - 1e-6);
        assert_eq!(first_passage_cdf(1.0, 0.0).unwrap(), 0.0);
        assert!((first_passage_cdf(1.0, 1.0).unwrap() - 0.317_310_507_862_914_1).abs() < 1e-12);
        assert!((first_passage_cdf(0.5, 1.0).unwrap() - 0.617_075_077_451_973_8).abs() < 1e-12);
    }

    #[test]
    fn parameter_errors() {
        assert!(max_coupling_prob(1.0, 0.0).is_err());
        assert!(first_passage_cdf(0.0, 1.0).is_err());
        assert!(first_passage_cdf(1.0, -1.0).is_err());
        assert!(join_mass(-1.0).is_err());
        assert!(LawSpec::first_passage(-2.0).is_err());
        assert!(LawSpec::join_mass(1.0).unwrap().cdf(1.0).is_err());
    }

    #[test]
    fn monotone_in_hnorm() {
        let hs: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        for w in hs.windows(2) {
            assert!(join_mass(w[1]).unwrap() < join_mass(w[0]).unwrap());
            assert!(total_variation(w[1]).unwrap() > total_variation(w[0]).unwrap());
            assert!(max_coupling_prob(w[1], 2.0).unwrap() < max_coupling_prob(w[0], 2.0).unwrap());
        }
    }

    #[test]
    fn scalar_laws() {
        let jm = LawSpec::join_mass(2.0).unwrap();
        let tv = LawSpec::tv_at_time(2.0, 1.0).unwrap();
        assert_eq!(jm.value().unwrap() + tv.value().unwrap(), 1.0);
    }

    proptest! {
        #[test]
        fn tail_symmetry(u in -8.0f64..8.0) {
            prop_assert!((std_normal_tail(u) + std_normal_tail(-u) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn aldous_bound_is_the_first_passage_law(h in 0.001f64..20.0, t in 0.001f64..100.0) {
            let bound = max_coupling_prob(h, t).unwrap();
            let law = first_passage_cdf(h / 2.0, t).unwrap();
            prop_assert!((bound - law).abs() < 1e-12);
        }

        #[test]
        fn brownian_scaling(a in 0.01f64..10.0, t in 0.0f64..50.0, c in 0.1f64..10.0) {
            let lhs = first_passage_cdf(a, t).unwrap();
            let rhs = first_passage_cdf(c * a, c * c * t).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn increasing_in_time(h in 0.01f64..10.0, t in 0.01f64..100.0) {
            prop_assert!(max_coupling_prob(h, t * 1.5).unwrap() >= max_coupling_prob(h, t).unwrap());
        }
    }
}
