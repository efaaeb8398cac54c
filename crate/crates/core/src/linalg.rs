//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::DMatrix;

use crate::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// `(‖MM* − I‖, ‖M*M − I‖)` in operator norm.
pub fn unitarity_defect(m: &CMatrix) -> (f64, f64) {
    let adj = m.adjoint();
    let row = spectral_norm(&(m * &adj - identity(m.nrows())));
    let col = spectral_norm(&(&adj * m - identity(m.ncols())));
    (row, col)
}

/// `max` of the two one-sided defects.
pub fn two_sided_defect(m: &CMatrix) -> f64 {
    let (r, c) = unitarity_defect(m);
    r.max(c)
}

/// Unitary factor of the polar decomposition `M = U·P`, i.e. the unitary
/// closest to `M` in Frobenius norm.
pub fn polar_unitary(m: &CMatrix) -> CMatrix {
    assert!(m.is_square(), "polar factor of a non-square matrix");
    match m.nrows() {
        0 => m.clone(),
        1 => {
            let z = m[(0, 0)];
            let n = z.norm();
            let u = if n > 0.0 { z / n } else { Complex64::new(1.0, 0.0) };
            CMatrix::from_element(1, 1, u)
        }
        2 => polar_2x2(m).unwrap_or_else(|| polar_svd(m)),
        _ => polar_svd(m),
    }
}

fn polar_svd(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V*");
    u * v_t
}

// For 2×2 positive S, √S = (S + √det S · I)/√(tr S + 2√det S).
fn polar_2x2(m: &CMatrix) -> Option<CMatrix> {
    let s = m.adjoint() * m;
    let scale = s[(0, 0)].re + s[(1, 1)].re;
    let det = (s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)]).re;
    if !(det > 1e-12 * scale * scale) {
        return None;
    }
    let sd = det.sqrt();
    let norm = (scale + 2.0 * sd).sqrt();
    // P = (S + sd I)/norm; P⁻¹ = norm · adj(S + sd I)/det(S + sd I).
    let a = s[(0, 0)] + sd;
    let d = s[(1, 1)] + sd;
    let b = s[(0, 1)];
    let c = s[(1, 0)];
    let pdet = a * d - b * c;
    let k = Complex64::new(norm, 0.0) / pdet;
    let p_inv = CMatrix::from_row_slice(2, 2, &[d * k, -b * k, -c * k, a * k]);
    Some(m * p_inv)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}
