use std::f64::consts::PI;

use super::sphere::{phi, PhiSign, Sphere4Point, Sphere5Point};
use crate::linalg::CMatrix;
use crate::{Complex64, Result};

/// A sample `W_t(v, r)` of the unitary path from `U₀ ⊕ 1` to `I₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathUnitary {
    pub t: f64,
    pub value: CMatrix,
}

/// The points `p_t^±(v, r) ∈ S⁵` moving `(v, ir)` along the chord towards
/// `ξ = ±1`, projected back onto the sphere:
/// `p_t^± = ((1−t)v, (1−t)ir ± t) / √((1−t)² + t²)`.
///
/// `p_t^+` never reaches `ξ = −1` and `p_t^−` never reaches `ξ = 1`: the
/// real part of `ξ` is `±t/ρ`, and at `t = 0` it is purely imaginary.
pub fn path_point(t: f64, p: &Sphere4Point) -> (Sphere5Point, Sphere5Point) {
    let s = 1.0 - t;
    let rho = (s * s + t * t).sqrt();
    let k = s / rho;
    let v = [p.v[0] * k, p.v[1] * k];
    let im = s * p.r / rho;
    let plus = Sphere5Point { v, xi: Complex64::new(t / rho, im) };
    let minus = Sphere5Point { v, xi: Complex64::new(-t / rho, im) };
    (plus, minus)
}

/// `W_t = φ⁺(p_t^+)*·φ⁻(p_t^−)·c_t` with `c_t = diag(1, 1, e^{πit})`.
pub fn w_path(t: f64, p: &Sphere4Point) -> Result<PathUnitary> {
    let (plus, minus) = path_point(t, p);
    let mut m = phi(&plus, PhiSign::Plus)?.adjoint() * phi(&minus, PhiSign::Minus)?;
    let phase = Complex64::from_polar(1.0, PI * t);
    for i in 0..3 {
        m[(i, 2)] *= phase;
    }
    Ok(PathUnitary { t, value: m })
}

/// `N₀(t, v, r) = W_t e₃`.
pub fn n0(t: f64, p: &Sphere4Point) -> Result<[Complex64; 3]> {
    let w = w_path(t, p)?.value;
    Ok([w[(0, 2)], w[(1, 2)], w[(2, 2)]])
}
