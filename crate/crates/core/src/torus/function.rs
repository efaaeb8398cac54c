use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rayon::prelude::*;

use super::Grid;
use crate::{Complex64, Error, Result};

/// Finite Fourier support: frequency `k ∈ Zⁿ` ↦ coefficient of `exp(2πi k·x)`.
pub type Coefficients = BTreeMap<Vec<i64>, Complex64>;

/// Row-major samples of a function at the nodes of a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    grid: Grid,
    values: Vec<Complex64>,
}

impl Samples {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// A complex function on `Tⁿ`, held as trigonometric coefficients, grid
/// samples, or both. When both are present the samples are the coefficient
/// sum evaluated at the grid nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction {
    dim: usize,
    coeffs: Option<Coefficients>,
    samples: Option<Samples>,
}

impl TorusFunction {
    pub fn from_coeffs<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Complex64)>,
    {
        let mut coeffs = Coefficients::new();
        for (k, c) in terms {
            if k.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: k.len() });
            }
            *coeffs.entry(k).or_default() += c;
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { dim, coeffs: Some(coeffs), samples: None })
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::from_coeffs(dim, [(vec![0; dim], c)]).expect("dimension matches")
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: Some(Coefficients::new()), samples: None }
    }

    /// The character `x ↦ exp(2πi k·x)`.
    pub fn character(k: &[i64]) -> Self {
        Self::from_coeffs(k.len(), [(k.to_vec(), Complex64::new(1.0, 0.0))]).expect("dimension")
    }

    pub fn from_samples(samples: Samples) -> Self {
        Self { dim: samples.grid.dim(), coeffs: None, samples: Some(samples) }
    }

    pub fn from_grid_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        Ok(Self::from_samples(Samples::new(grid, values)?))
    }

    /// Samples `f` at every node of `grid`.
    pub fn from_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let values = (0..grid.len()).into_par_iter().map(|idx| f(&grid.point(idx))).collect();
        Self::from_samples(Samples { grid, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> Option<&Coefficients> {
        self.coeffs.as_ref()
    }

    pub fn samples(&self) -> Option<&Samples> {
        self.samples.as_ref()
    }

    pub fn grid(&self) -> Option<&Grid> {
        self.samples.as_ref().map(|s| &s.grid)
    }

    pub fn has_coefficients(&self) -> bool {
        self.coeffs.is_some()
    }

    /// Largest `|k_i|` over the coefficient support.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs
            .as_ref()
            .map(|c| c.keys().flat_map(|k| k.iter().map(|x| x.abs())).max().unwrap_or(0))
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if let Some(c) = &self.coeffs {
            return Ok(eval_coeffs(c, x));
        }
        let s = self.samples.as_ref().expect("at least one representation");
        let idx = s.grid.node_of(x).ok_or(Error::OffGrid)?;
        Ok(s.values[idx])
    }

    /// Values at the nodes of `grid`. Grid-only functions must already live
    /// on exactly that grid.
    pub fn values_on(&self, grid: &Grid) -> Result<Vec<Complex64>> {
        if grid.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: grid.dim() });
        }
        if let Some(s) = &self.samples {
            if &s.grid == grid {
                return Ok(s.values.clone());
            }
        }
        match &self.coeffs {
            Some(c) => Ok(sample_coeffs(c, grid)),
            None => Err(Error::IncompatibleGrid(format!(
                "grid-only function lives on {:?}, requested {:?}",
                self.grid().map(Grid::shape),
                grid.shape()
            ))),
        }
    }

    /// Copy of `self` that also carries samples on `grid`.
    pub fn sampled(&self, grid: &Grid) -> Result<Self> {
        let values = self.values_on(grid)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self.coeffs.clone(),
            samples: Some(Samples { grid: grid.clone(), values }),
        })
    }

    /// Copy of `self` keeping only the grid samples.
    pub fn grid_only(&self, grid: &Grid) -> Result<Self> {
        Ok(Self::from_samples(Samples { grid: grid.clone(), values: self.values_on(grid)? }))
    }

    /// `x ↦ f(x − w)`.
    pub fn translate(&self, w: &[f64]) -> Result<Self> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.len() });
        }
        let coeffs = self.coeffs.as_ref().map(|c| {
            c.iter()
                .map(|(k, &v)| (k.clone(), v * Complex64::from_polar(1.0, -TAU * dot(k, w))))
                .collect()
        });
        let samples = match &self.samples {
            Some(s) => {
                let shift = s.grid.shift_for(w);
                match (shift, &coeffs) {
                    (Some(shift), _) => Some(Samples {
                        grid: s.grid.clone(),
                        values: translate_values(&s.grid, &s.values, &shift),
                    }),
                    // Off-lattice shift: keep the exact coefficient form only.
                    (None, Some(_)) => None,
                    (None, None) => return Err(Error::OffGrid),
                }
            }
            None => None,
        };
        Ok(Self { dim: self.dim, coeffs, samples })
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.as_ref().map(|c| {
                c.iter().map(|(k, v)| (k.iter().map(|x| -x).collect(), v.conj())).collect()
            }),
            samples: self.samples.as_ref().map(|s| Samples {
                grid: s.grid.clone(),
                values: s.values.iter().map(Complex64::conj).collect(),
            }),
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.map_values(|v| v * a, |v| v * a)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, CoeffOp::Add, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, CoeffOp::Sub, |a, b| a - b)
    }

    /// Pointwise product (convolution of coefficients).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, CoeffOp::Mul, |a, b| a * b)
    }

    /// Pointwise map on the samples. Coefficients are dropped, so the result
    /// is grid-only.
    pub fn map_samples<F>(&self, grid: &Grid, f: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64,
    {
        let values = self.values_on(grid)?.into_iter().map(f).collect();
        Ok(Self::from_samples(Samples { grid: grid.clone(), values }))
    }

    /// `sup |f − g|` over the nodes of `grid`.
    pub fn sup_distance(&self, other: &Self, grid: &Grid) -> Result<f64> {
        let a = self.values_on(grid)?;
        let b = other.values_on(grid)?;
        Ok(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
    }

    pub fn sup_norm(&self, grid: &Grid) -> Result<f64> {
        Ok(self.values_on(grid)?.iter().map(|v| v.norm()).fold(0.0, f64::max))
    }

    /// Grid on which a binary operation between `self` and `other` runs.
    pub fn common_grid(&self, other: &Self) -> Result<Option<Grid>> {
        match (self.grid(), other.grid()) {
            (Some(a), Some(b)) if a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => {
                if self.coeffs.is_some() {
                    Ok(Some(b.clone()))
                } else if other.coeffs.is_some() {
                    Ok(Some(a.clone()))
                } else {
                    Err(Error::IncompatibleGrid(format!(
                        "grid-only operands on {:?} and {:?}",
                        a.shape(),
                        b.shape()
                    )))
                }
            }
            (Some(a), None) => Ok(Some(a.clone())),
            (None, Some(b)) => Ok(Some(b.clone())),
            (None, None) => Ok(None),
        }
    }

    fn map_values<C, S>(&self, fc: C, fs: S) -> Self
    where
        C: Fn(Complex64) -> Complex64,
        S: Fn(Complex64) -> Complex64,
    {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .as_ref()
                .map(|c| c.iter().map(|(k, &v)| (k.clone(), fc(v))).collect()),
            samples: self.samples.as_ref().map(|s| Samples {
                grid: s.grid.clone(),
                values: s.values.iter().map(|&v| fs(v)).collect(),
            }),
        }
    }

    fn combine<F>(&self, other: &Self, op: CoeffOp, pointwise: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if let (Some(a), Some(b)) = (&self.coeffs, &other.coeffs) {
            let coeffs = op.apply(a, b);
            let samples = match (&self.samples, &other.samples) {
                (Some(sa), Some(sb)) if sa.grid == sb.grid => Some(Samples {
                    grid: sa.grid.clone(),
                    values: sa.values.iter().zip(&sb.values).map(|(&x, &y)| pointwise(x, y)).collect(),
                }),
                _ => None,
            };
            return Ok(Self { dim: self.dim, coeffs: Some(coeffs), samples });
        }
        let grid = self.common_grid(other)?.expect("a grid-only operand exists");
        let a = self.values_on(&grid)?;
        let b = other.values_on(&grid)?;
        let values = a.iter().zip(&b).map(|(&x, &y)| pointwise(x, y)).collect();
        Ok(Self::from_samples(Samples { grid, values }))
    }
}

#[derive(Clone, Copy)]
enum CoeffOp {
    Add,
    Sub,
    Mul,
}

impl CoeffOp {
    fn apply(self, a: &Coefficients, b: &Coefficients) -> Coefficients {
        let mut out = Coefficients::new();
        match self {
            CoeffOp::Add | CoeffOp::Sub => {
                let sign = if matches!(self, CoeffOp::Add) { 1.0 } else { -1.0 };
                for (k, &v) in a {
                    *out.entry(k.clone()).or_default() += v;
                }
                for (k, &v) in b {
                    *out.entry(k.clone()).or_default() += v * sign;
                }
            }
            CoeffOp::Mul => {
                for (ka, &va) in a {
                    for (kb, &vb) in b {
                        let k: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                        *out.entry(k).or_default() += va * vb;
                    }
                }
            }
        }
        out.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        out
    }
}

pub(crate) fn dot(k: &[i64], x: &[f64]) -> f64 {
    k.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum()
}

pub(crate) fn eval_coeffs(c: &Coefficients, x: &[f64]) -> Complex64 {
    c.iter()
        .map(|(k, &v)| {
            // Reduce the phase mod 1 before scaling by 2π.
            let phase = dot(k, x);
            v * Complex64::from_polar(1.0, TAU * (phase - phase.floor()))
        })
        .sum()
}

/// Evaluates a coefficient map on a grid using per-axis roots of unity, so
/// each term is an exact product of tabulated phases.
pub(crate) fn sample_coeffs(c: &Coefficients, grid: &Grid) -> Vec<Complex64> {
    let roots: Vec<Vec<Complex64>> = grid
        .shape()
        .iter()
        .map(|&n| (0..n).map(|m| Complex64::from_polar(1.0, TAU * m as f64 / n as f64)).collect())
        .collect();
    let terms: Vec<(&Vec<i64>, Complex64)> = c.iter().map(|(k, &v)| (k, v)).collect();
    (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let j = grid.multi_index(idx);
            terms
                .iter()
                .map(|(k, v)| {
                    k.iter().zip(&j).zip(&roots).fold(*v, |acc, ((&ki, &ji), r)| {
                        let n = r.len() as i64;
                        acc * r[(ki * ji as i64).rem_euclid(n) as usize]
                    })
                })
                .sum()
        })
        .collect()
}

/// `g[idx] = f[idx − shift]`.
pub(crate) fn translate_values(grid: &Grid, values: &[Complex64], shift: &[i64]) -> Vec<Complex64> {
    let back: Vec<i64> = shift.iter().map(|s| -s).collect();
    (0..grid.len()).map(|idx| values[grid.shifted(idx, &back)]).collect()
}
