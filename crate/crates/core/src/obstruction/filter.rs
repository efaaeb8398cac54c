use std::f64::consts::TAU;

use super::path::n0;
use super::sphere::{pinch, Sphere4Point};
use crate::completion::householder_complete;
use crate::lattice::DilationMatrix;
use crate::linalg::CMatrix;
use crate::torus::{Grid, TorusFunction};
use crate::{Complex64, Error, Result};

/// Default sample grid on `T⁵`.
pub const DEFAULT_SHAPE: [usize; 5] = [9, 8, 8, 8, 8];

/// Component of `H₀` attached to the character `ê₁ʲ`, `j = 0, 1, 2`.
pub const COMPONENT_OF_CHARACTER: [usize; 3] = [2, 0, 1];

/// The dilation matrix `[[0, 3], [I₄, 0]]` on `Z⁵`, with `det = 3`.
pub fn dilation() -> DilationMatrix {
    DilationMatrix::det3_on_z5()
}

/// Constant unitary `Q` with `Q·e₃ = 3^{-1/2}(1, 1, 1)`.
pub fn calibration() -> CMatrix {
    let s = Complex64::new(3f64.sqrt().recip(), 0.0);
    // The transpose has `s` as first column; rotate it into the third.
    let m = householder_complete(&[s, s, s]).expect("unit row").transpose();
    CMatrix::from_fn(3, 3, |i, j| m[(i, (j + 1) % 3)])
}

/// Coordinates `(t, u)` of a point of `T⁵ = T × T⁴`: `t ∈ [0,1)` and
/// `u ∈ [−1,1)⁴`, with `0 ↦ 0`.
pub fn torus_coordinates(x: &[f64]) -> (f64, [f64; 4]) {
    let wrap = |y: f64| y - y.floor();
    let mut u = [0.0; 4];
    for (ui, &xi) in u.iter_mut().zip(&x[1..5]) {
        *ui = 2.0 * (wrap(xi + 0.5) - 0.5);
    }
    (wrap(x[0]), u)
}

/// `H₀(x) = N₀(t, P(u))`, optionally followed by the calibration `Q`.
pub fn h0_field(x: &[f64], calibrated: bool) -> Result<[Complex64; 3]> {
    if x.len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, got: x.len() });
    }
    let (t, u) = torus_coordinates(x);
    let p: Sphere4Point = pinch(u);
    let h = n0(t, &p)?;
    if !calibrated {
        return Ok(h);
    }
    let q = calibration();
    Ok([0, 1, 2].map(|i| (0..3).map(|j| q[(i, j)] * h[j]).sum()))
}

/// `h₀(x) = 3^{-1/2} Σ_j H_{c(j)}(3x₁ mod 1, x₂, …, x₅)·e^{2πijx₁}` at an
/// arbitrary point.
pub fn h0_value(x: &[f64], calibrated: bool) -> Result<Complex64> {
    if x.len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, got: x.len() });
    }
    let x1 = x[0] - x[0].floor();
    let mut y = x.to_vec();
    y[0] = 3.0 * x1;
    let h = h0_field(&y, calibrated)?;
    let s = 3f64.sqrt().recip();
    Ok((0..3)
        .map(|j| h[COMPONENT_OF_CHARACTER[j]] * Complex64::from_polar(s, TAU * j as f64 * x1))
        .sum())
}

/// Samples `h₀` on a grid of `T⁵` whose first axis is divisible by 3.
pub fn assemble_h0(shape: &[usize], calibrated: bool) -> Result<TorusFunction> {
    if shape.len() != 5 {
        return Err(Error::BadResolution(format!("need 5 axes, got {shape:?}")));
    }
    if shape[0] % 3 != 0 {
        return Err(Error::BadResolution(format!(
            "first axis resolution {} is not divisible by 3",
            shape[0]
        )));
    }
    let grid = Grid::new(shape.to_vec())?;
    let values: Vec<Result<Complex64>> = {
        use rayon::prelude::*;
        (0..grid.len()).into_par_iter().map(|idx| h0_value(&grid.point(idx), calibrated)).collect()
    };
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    TorusFunction::from_grid_values(grid, values)
}
