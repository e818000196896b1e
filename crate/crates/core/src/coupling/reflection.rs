use crate::error::{Error, Result};
use crate::wiener_space::HVector;

/// Cameron–Martin reflection `R_x(y) = y − 2 ⟨x, y⟩ / ‖x‖² · x` across the
/// hyperplane orthogonal to `x`.
pub fn reflect(x: &HVector, y: &HVector) -> Result<HVector> {
    y.check_len(x.len())?;
    let norm_sq = x.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::ZeroReflection);
    }
    let factor = 2.0 * x.inner(y)? / norm_sq;
    HVector::new(
        y.coeffs()
            .iter()
            .zip(x.coeffs())
            .map(|(yk, xk)| yk - factor * xk)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> HVector {
        HVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn reflecting_x_negates_it() {
        let x = v(&[1.0, -2.0, 0.5]);
        assert_eq!(reflect(&x, &x).unwrap(), x.scale(-1.0));
    }

    #[test]
    fn orthogonal_vectors_are_fixed() {
        let x = v(&[1.0, 1.0, 0.0]);
        let y = v(&[1.0, -1.0, 4.0]);
        assert_eq!(reflect(&x, &y).unwrap(), y);
    }

    #[test]
    fn hand_example() {
        assert_eq!(reflect(&v(&[1.0, 0.0]), &v(&[3.0, 4.0])).unwrap(), v(&[-3.0, 4.0]));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            reflect(&HVector::zeros(2), &v(&[1.0, 2.0])),
            Err(Error::ZeroReflection)
        ));
        assert!(matches!(
            reflect(&v(&[1.0]), &v(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn isometric_involution(
            (x, y) in (1usize..64).prop_flat_map(|k| (
                prop::collection::vec(-10.0f64..10.0, k),
                prop::collection::vec(-10.0f64..10.0, k),
            ))
        ) {
            let x = HVector::new(x).unwrap();
            prop_assume!(x.norm() > 1e-3);
            let y = HVector::new(y).unwrap();
            let r = reflect(&x, &y).unwrap();
            prop_assert!((r.norm() - y.norm()).abs() <= 1e-12 * y.norm().max(1.0));
            let back = reflect(&x, &r).unwrap();
            for (a, b) in back.coeffs().iter().zip(y.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * y.norm().max(1.0));
            }
        }
    }
}
