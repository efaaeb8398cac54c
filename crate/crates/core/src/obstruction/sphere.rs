use std::f64::consts::PI;

use crate::linalg::CMatrix;
use crate::{Complex64, Error, Result};

/// Tolerance on the sphere constraints.
pub const SPHERE_TOL: f64 = 1e-12;
/// Distance from an excluded pole below which `φ±` refuses to evaluate.
pub const POLE_TOL: f64 = 1e-8;

/// A point `(v, ir)` of `S⁴ ⊂ C² × iR`, stored as `(v, r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere4Point {
    pub v: [Complex64; 2],
    pub r: f64,
}

/// A point `(v, ξ)` of `S⁵ ⊂ C² × C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere5Point {
    pub v: [Complex64; 2],
    pub xi: Complex64,
}

fn norm_sqr(v: &[Complex64; 2]) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

impl Sphere4Point {
    pub fn new(v: [Complex64; 2], r: f64) -> Result<Self> {
        let residual = (norm_sqr(&v) + r * r - 1.0).abs();
        if residual > SPHERE_TOL {
            return Err(Error::OffSphere(residual));
        }
        Ok(Self { v, r })
    }

    /// Radial projection of a non-zero point of `R⁵`.
    pub fn from_real(x: [f64; 5]) -> Result<Self> {
        let n = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(n > 0.0) {
            return Err(Error::OffSphere(1.0));
        }
        Self::new(
            [Complex64::new(x[0] / n, x[1] / n), Complex64::new(x[2] / n, x[3] / n)],
            x[4] / n,
        )
    }

    pub fn north() -> Self {
        Self { v: [Complex64::default(); 2], r: 1.0 }
    }

    pub fn south() -> Self {
        Self { v: [Complex64::default(); 2], r: -1.0 }
    }

    pub fn residual(&self) -> f64 {
        (norm_sqr(&self.v) + self.r * self.r - 1.0).abs()
    }

    /// The embedding `(v, ir)` into `S⁵`.
    pub fn embed(&self) -> Sphere5Point {
        Sphere5Point { v: self.v, xi: Complex64::new(0.0, self.r) }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        ((self.v[0] - other.v[0]).norm_sqr()
            + (self.v[1] - other.v[1]).norm_sqr()
            + (self.r - other.r).powi(2))
        .sqrt()
    }
}

impl Sphere5Point {
    pub fn new(v: [Complex64; 2], xi: Complex64) -> Result<Self> {
        let residual = (norm_sqr(&v) + xi.norm_sqr() - 1.0).abs();
        if residual > SPHERE_TOL {
            return Err(Error::OffSphere(residual));
        }
        Ok(Self { v, xi })
    }

    pub fn residual(&self) -> f64 {
        (norm_sqr(&self.v) + self.xi.norm_sqr() - 1.0).abs()
    }
}

/// Which of the two clutching factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiSign {
    /// Undefined at the south pole `ξ = −1`.
    Plus,
    /// Undefined at the north pole `ξ = 1`.
    Minus,
}

fn outer(v: &[Complex64; 2]) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj())
}

/// `U₀(v, r) = I₂ − 2(1 + ir)⁻²vv*`.
pub fn u0(p: &Sphere4Point) -> Result<CMatrix> {
    Sphere4Point::new(p.v, p.r)?;
    let s = Complex64::new(1.0, p.r);
    let k = Complex64::new(2.0, 0.0) / (s * s);
    Ok(CMatrix::identity(2, 2) - outer(&p.v) * k)
}

/// The 3×3 unitary
///
/// ```text
/// φ⁺(v, ξ) = [ I₂ − (1+ξ̄)⁻¹vv*   v ]      φ⁻(v, ξ) = [ I₂ − (1−ξ̄)⁻¹vv*   v ]
///            [ −b(ξ)v*            ξ ]                 [ c(ξ)v*             ξ ]
/// ```
///
/// with `b(ξ) = (1+ξ)/(1+ξ̄)` and `c(ξ) = (1−ξ)/(1−ξ̄)`.
pub fn phi(p: &Sphere5Point, sign: PhiSign) -> Result<CMatrix> {
    Sphere5Point::new(p.v, p.xi)?;
    let one = Complex64::new(1.0, 0.0);
    let (pole, denom, row_factor) = match sign {
        PhiSign::Plus => {
            let d = one + p.xi.conj();
            (-one, d, -(one + p.xi) / d)
        }
        PhiSign::Minus => {
            let d = one - p.xi.conj();
            (one, d, (one - p.xi) / d)
        }
    };
    let distance = (p.xi - pole).norm();
    if distance < POLE_TOL {
        return Err(Error::PoleSingularity { distance });
    }
    let top = CMatrix::identity(2, 2) - outer(&p.v) / denom;
    let mut m = CMatrix::zeros(3, 3);
    m.view_mut((0, 0), (2, 2)).copy_from(&top);
    for i in 0..2 {
        m[(i, 2)] = p.v[i];
        m[(2, i)] = row_factor * p.v[i].conj();
    }
    m[(2, 2)] = p.xi;
    Ok(m)
}

/// `U₀ ⊕ 1`.
pub fn u0_plus_one(p: &Sphere4Point) -> Result<CMatrix> {
    let mut m = CMatrix::identity(3, 3);
    m.view_mut((0, 0), (2, 2)).copy_from(&u0(p)?);
    Ok(m)
}

/// Frobenius norm of `U₀(v,r) ⊕ 1 − φ⁺(v,ir)*·φ⁻(v,ir)`.
pub fn factorization_check(p: &Sphere4Point) -> Result<f64> {
    let e = p.embed();
    let rhs = phi(&e, PhiSign::Plus)?.adjoint() * phi(&e, PhiSign::Minus)?;
    Ok((u0_plus_one(p)? - rhs).norm())
}

/// The pinch map `[−1,1]⁴ → S⁴`, `u ↦ (u/‖u‖₂ · sin(π‖u‖∞), cos(π‖u‖∞))`,
/// with `R⁴ ≅ C²` via `(u₁ + iu₂, u₃ + iu₄)`. The whole boundary goes to the
/// south pole and `0` to the north pole.
pub fn pinch(u: [f64; 4]) -> Sphere4Point {
    let sup = u.iter().fold(0.0_f64, |m, x| m.max(x.abs())).min(1.0);
    if sup == 0.0 {
        return Sphere4Point::north();
    }
    let l2 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s = (PI * sup).sin() / l2;
    Sphere4Point {
        v: [Complex64::new(u[0] * s, u[1] * s), Complex64::new(u[2] * s, u[3] * s)],
        r: (PI * sup).cos(),
    }
}
