use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Matrix exponential by scaling and squaring with a Padé approximant.
pub fn expm(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("expm needs a square matrix, got {}x{}", a.nrows(), a.ncols())));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("expm input"));
    }
    Ok(a.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gives_identity() {
        let e = expm(&DMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, DMatrix::identity(3, 3));
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let a = DMatrix::from_row_slice(2, 2, &[0.3, 0.0, 0.0, -1.2]);
        let e = expm(&a).unwrap();
        assert!((e[(0, 0)] - 0.3f64.exp()).abs() < 1e-14);
        assert!((e[(1, 1)] - (-1.2f64).exp()).abs() < 1e-14);
        let n = DMatrix::from_row_slice(2, 2, &[0.0, 2.5, 0.0, 0.0]);
        let e = expm(&n).unwrap();
        assert!((e[(0, 1)] - 2.5).abs() < 1e-14 && (e[(0, 0)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(expm(&DMatrix::zeros(2, 3)).is_err());
        assert!(expm(&DMatrix::from_element(2, 2, f64::NAN)).is_err());
    }
}
