//! Fourier transforms of scaling functions and wavelets as truncated
//! infinite products `Φ_N(x) = Π_{k=1}^{N} q⁻¹m₀(B⁻ᵏx)`, `B = Aᵀ`.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{DilationMatrix, IntMatrix};
use crate::torus::{eval_coeffs, Coefficients, TorusFunction};
use crate::{io, Complex64, Error, Result};

pub const DEFAULT_DEPTH: usize = 40;

/// `Φ_N` for a mask `m₀` in coefficient form.
#[derive(Clone, Debug)]
pub struct ScalingTransform {
    coeffs: Coefficients,
    dilation: DilationMatrix,
    depth: usize,
    adj_b: IntMatrix,
    det_b: f64,
}

impl ScalingTransform {
    pub fn new(m0: &TorusFunction, dilation: &DilationMatrix, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::BadDepth);
        }
        let coeffs = m0.coefficients().ok_or(Error::NoCoefficientForm)?.clone();
        if m0.dim() != dilation.dim() {
            return Err(Error::DimensionMismatch { expected: dilation.dim(), got: m0.dim() });
        }
        let b = dilation.transpose();
        Ok(Self {
            coeffs,
            dilation: dilation.clone(),
            depth,
            adj_b: b.adjugate(),
            det_b: b.determinant() as f64,
        })
    }

    pub fn dilation(&self) -> &DilationMatrix {
        &self.dilation
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::BadDepth);
        }
        Ok(Self { depth, ..self.clone() })
    }

    /// `B⁻¹x = adj(B)x / det B`.
    pub fn inverse_step(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.adj_b[(i, j)] as f64 * x[j]).sum::<f64>() / self.det_b)
            .collect()
    }

    /// `q⁻¹m₀(y)`.
    pub fn factor(&self, y: &[f64]) -> Complex64 {
        eval_coeffs(&self.coeffs, y) / self.dilation.q() as f64
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        self.evaluate_depth(x, self.depth)
    }

    pub fn evaluate_depth(&self, x: &[f64], depth: usize) -> Result<Complex64> {
        if x.len() != self.dilation.dim() {
            return Err(Error::DimensionMismatch { expected: self.dilation.dim(), got: x.len() });
        }
        let mut y = x.to_vec();
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..depth {
            y = self.inverse_step(&y);
            acc *= self.factor(&y);
        }
        Ok(acc)
    }
}

/// `Φ_N(x)` for the mask `m₀`.
pub fn scaling_fourier(m0: &TorusFunction, a: &DilationMatrix, x: &[f64], depth: usize) -> Result<Complex64> {
    ScalingTransform::new(m0, a, depth)?.evaluate(x)
}

/// `ψ̂_i(x) = q⁻¹m_i(B⁻¹x)·Φ_N(B⁻¹x)` for a high-pass mask `m_i` of the
/// dilation `a`.
pub fn wavelet_fourier(
    mi: &TorusFunction,
    a: &DilationMatrix,
    scaling: &ScalingTransform,
    x: &[f64],
) -> Result<Complex64> {
    if a != scaling.dilation() {
        return Err(Error::MismatchedDilation);
    }
    let coeffs = mi.coefficients().ok_or(Error::NoCoefficientForm)?;
    if mi.dim() != a.dim() || x.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: x.len().min(mi.dim()) });
    }
    let y = scaling.inverse_step(x);
    Ok(eval_coeffs(coeffs, &y) / a.q() as f64 * scaling.evaluate(&y)?)
}

/// Sample points of the box `[lo, hi]ⁿ` with `res` points per axis,
/// endpoints included, in lexicographic order. Degenerate axes (`lo == hi`
/// or `res == 1`) carry the single point `lo`.
pub fn box_samples(dim: usize, lo: f64, hi: f64, res: usize) -> Result<Vec<Vec<f64>>> {
    if res == 0 || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::BadResolution(format!("box [{lo}, {hi}] with {res} points")));
    }
    let axis: Vec<f64> = if res == 1 || lo == hi {
        vec![lo]
    } else {
        (0..res).map(|i| lo + (hi - lo) * i as f64 / (res - 1) as f64).collect()
    };
    let mut points = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

/// Evaluates `f` on [`box_samples`] and writes `x1..xn,re,im` rows to `out`.
/// Returns the number of rows.
pub fn sample_export<F>(dim: usize, lo: f64, hi: f64, res: usize, f: F, out: &Path) -> Result<usize>
where
    F: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let rows = sample_table(dim, lo, hi, res, f)?;
    let mut header: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    header.push("re".into());
    header.push("im".into());
    io::write_csv(out, &header, &rows)?;
    Ok(rows.len())
}

pub fn sample_table<F>(dim: usize, lo: f64, hi: f64, res: usize, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    box_samples(dim, lo, hi, res)?
        .into_par_iter()
        .map(|x| {
            let v = f(&x)?;
            let mut row = x;
            row.push(v.re);
            row.push(v.im);
            Ok(row)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub depth: usize,
    /// `max |Φ_N − Φ_{2N}|` over the sample points.
    pub max_change: f64,
}

/// `max |Φ_N − Φ_{2N}|` over `points` for each `N` in `depths`.
pub fn convergence_table(
    transform: &ScalingTransform,
    points: &[Vec<f64>],
    depths: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    depths
        .iter()
        .map(|&depth| {
            if depth == 0 {
                return Err(Error::BadDepth);
            }
            let changes = points
                .par_iter()
                .map(|x| {
                    let a = transform.evaluate_depth(x, depth)?;
                    let b = transform.evaluate_depth(x, 2 * depth)?;
                    Ok((a - b).norm())
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(ConvergenceRow { depth, max_change: changes.into_iter().fold(0.0, f64::max) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_dilation;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn haar() -> (DilationMatrix, TorusFunction, TorusFunction) {
        let a = validate_dilation(&[vec![2]]).unwrap();
        let m0 = TorusFunction::from_coeffs(1, [(vec![0], c(1.0)), (vec![1], c(1.0))]).unwrap();
        let m1 = TorusFunction::from_coeffs(1, [(vec![0], c(-1.0)), (vec![1], c(1.0))]).unwrap();
        (a, m0, m1)
    }

    fn haar_closed_form(x: f64) -> Complex64 {
        if x == 0.0 {
            return c(1.0);
        }
        (Complex64::from_polar(1.0, 2.0 * PI * x) - 1.0) / Complex64::new(0.0, 2.0 * PI * x)
    }

    #[test]
    fn haar_product_matches_closed_form() {
        let (a, m0, _) = haar();
        assert_eq!(scaling_fourier(&m0, &a, &[0.0], 40).unwrap(), c(1.0));
        for x in [0.5, -3.7, 1.25, 4.0] {
            let v = scaling_fourier(&m0, &a, &[x], 40).unwrap();
            assert!((v - haar_closed_form(x)).norm() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn haar_wavelet_values() {
        let (a, m0, m1) = haar();
        let s = ScalingTransform::new(&m0, &a, 40).unwrap();
        assert!(wavelet_fourier(&m1, &a, &s, &[0.0]).unwrap().norm() < 1e-15);
        let x = 0.5;
        let z = Complex64::from_polar(1.0, PI * x) - 1.0;
        let closed = z * z / Complex64::new(0.0, 2.0 * PI * x);
        assert!((wavelet_fourier(&m1, &a, &s, &[x]).unwrap() - closed).norm() < 1e-9);
        let q = validate_dilation(&[vec![1, 1], vec![1, -1]]).unwrap();
        assert!(matches!(wavelet_fourier(&m1, &q, &s, &[x]), Err(Error::MismatchedDilation)));
    }

    #[test]
    fn two_scale_relation_of_truncation() {
        let a = validate_dilation(&[vec![1, 1], vec![1, -1]]).unwrap();
        let m0 = TorusFunction::from_coeffs(2, [(vec![0, 0], c(1.0)), (vec![1, 0], c(1.0))]).unwrap();
        let s = ScalingTransform::new(&m0, &a, 20).unwrap();
        for x in [[0.3, -1.2], [1.7, 0.4]] {
            let y = s.inverse_step(&x);
            let lhs = s.evaluate_depth(&x, 21).unwrap();
            let rhs = s.factor(&y) * s.evaluate_depth(&y, 20).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn bad_inputs() {
        let (a, m0, _) = haar();
        assert!(matches!(ScalingTransform::new(&m0, &a, 0), Err(Error::BadDepth)));
        let g = m0.grid_only(&crate::torus::Grid::new(vec![8]).unwrap()).unwrap();
        assert!(matches!(ScalingTransform::new(&g, &a, 4), Err(Error::NoCoefficientForm)));
    }

    #[test]
    fn box_sampling() {
        assert_eq!(box_samples(1, 0.0, 0.0, 5).unwrap(), vec![vec![0.0]]);
        assert_eq!(box_samples(2, -1.0, 1.0, 2).unwrap().len(), 4);
        let pts = box_samples(1, -4.0, 4.0, 512).unwrap();
        assert_eq!((pts[0][0], pts[511][0]), (-4.0, 4.0));
        assert!(box_samples(1, 1.0, 0.0, 3).is_err());
    }
}
