use crate::linalg::CMatrix;
use crate::{Complex64, Error, Result};

/// Allowed deviation of the input row from unit norm.
pub const UNIT_TOL: f64 = 1e-8;

/// Unitary matrix whose first row is `row`.
///
/// With `x = conj(row)` and `θ = arg x₁`, the Householder reflection `P`
/// mapping `e^{−iθ}x` to `e₁` gives `M = e^{−iθ}P`, whose first row is
/// `row`. The result depends only on `row`.
pub fn householder_complete(row: &[Complex64]) -> Result<CMatrix> {
    let q = row.len();
    let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if q == 0 || (norm - 1.0).abs() >= UNIT_TOL {
        return Err(Error::NotUnit(norm));
    }
    let x: Vec<Complex64> = row.iter().map(|z| z.conj() / norm).collect();
    let theta = if x[0].norm() > 0.0 { x[0].arg() } else { 0.0 };
    let phase = Complex64::from_polar(1.0, -theta);
    let xr: Vec<Complex64> = x.iter().map(|z| z * phase).collect();

    // w = e₁ − x', with w₁ = 1 − |x₁| computed without cancellation.
    let tail: f64 = xr[1..].iter().map(|z| z.norm_sqr()).sum();
    let mut w: Vec<Complex64> = xr.iter().map(|z| -z).collect();
    w[0] = Complex64::new(tail / (1.0 + xr[0].re), 0.0);
    let ww: f64 = w.iter().map(|z| z.norm_sqr()).sum();

    let mut m = CMatrix::identity(q, q);
    if ww > f64::EPSILON * f64::EPSILON {
        for i in 0..q {
            for j in 0..q {
                m[(i, j)] -= w[i] * w[j].conj() * (2.0 / ww);
            }
        }
    }
    Ok(m * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::two_sided_defect;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn unit_axes() {
        let m = householder_complete(&[c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!((m - CMatrix::identity(3, 3)).norm() < 1e-15);

        let m = householder_complete(&[c(0.0), c(1.0), c(0.0)]).unwrap();
        let swap = CMatrix::from_row_slice(
            3,
            3,
            &[c(0.0), c(1.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(1.0)],
        );
        assert!((m - swap).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unit_rows() {
        assert!(matches!(householder_complete(&[c(1.1), c(0.0)]), Err(Error::NotUnit(_))));
        assert!(matches!(householder_complete(&[]), Err(Error::NotUnit(_))));
    }

    #[test]
    fn random_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..1000 {
            let q = 2 + trial % 5;
            let mut row: Vec<Complex64> = (0..q)
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            let n = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            row.iter_mut().for_each(|z| *z /= n);
            let m = householder_complete(&row).unwrap();
            for (j, z) in row.iter().enumerate() {
                assert!((m[(0, j)] - z).norm() < 1e-12);
            }
            assert!(two_sided_defect(&m) < 1e-12);
        }
    }
}
