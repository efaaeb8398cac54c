use crate::lattice::{DualGroup, Rational};
use crate::{Error, Result};
use num_integer::Integer;

/// Oversampling applied on top of the smallest `F`-compatible grid.
pub const DEFAULT_OVERSAMPLING: usize = 16;

const NODE_TOL: f64 = 1e-9;

/// Uniform grid `{(j₁/N₁, …, j_n/N_n)}` on `Tⁿ`, stored row-major with the
/// last axis fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    shape: Vec<usize>,
    strides: Vec<usize>,
}

impl Grid {
    pub fn new(shape: Vec<usize>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::BadResolution(format!("grid shape {shape:?}")));
        }
        let mut strides = vec![1; shape.len()];
        for i in (0..shape.len() - 1).rev() {
            strides[i] = strides[i + 1] * shape[i + 1];
        }
        Ok(Self { shape, strides })
    }

    /// Smallest grid on which every element of `F` is a node, times `factor`.
    pub fn for_dual_group(dual: &DualGroup, factor: usize) -> Self {
        let shape = dual
            .axis_denominators()
            .into_iter()
            .map(|d| d as usize * factor)
            .collect();
        Self::new(shape).expect("positive shape")
    }

    pub fn default_for(dual: &DualGroup) -> Self {
        Self::for_dual_group(dual, DEFAULT_OVERSAMPLING)
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (slot, &s) in out.iter_mut().zip(&self.strides) {
            *slot = idx / s;
            idx %= s;
        }
        out
    }

    pub fn linear_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.strides).map(|(j, s)| j * s).sum()
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        self.multi_index(idx)
            .iter()
            .zip(&self.shape)
            .map(|(&j, &n)| j as f64 / n as f64)
            .collect()
    }

    /// Linear index of the node at `x` (coordinates taken mod 1), if any.
    pub fn node_of(&self, x: &[f64]) -> Option<usize> {
        if x.len() != self.dim() {
            return None;
        }
        let mut multi = Vec::with_capacity(self.dim());
        for (&xi, &n) in x.iter().zip(&self.shape) {
            let scaled = xi * n as f64;
            let j = scaled.round();
            if (scaled - j).abs() > NODE_TOL * n as f64 {
                return None;
            }
            multi.push((j as i64).rem_euclid(n as i64) as usize);
        }
        Some(self.linear_index(&multi))
    }

    /// Integer node shift corresponding to a translation by `w`.
    pub fn shift_for(&self, w: &[f64]) -> Option<Vec<i64>> {
        if w.len() != self.dim() {
            return None;
        }
        w.iter()
            .zip(&self.shape)
            .map(|(&wi, &n)| {
                let scaled = wi * n as f64;
                let j = scaled.round();
                ((scaled - j).abs() <= NODE_TOL * n as f64).then_some(j as i64)
            })
            .collect()
    }

    pub fn shift_for_rational(&self, w: &[Rational]) -> Option<Vec<i64>> {
        w.iter()
            .zip(&self.shape)
            .map(|(wi, &n)| {
                let scaled = wi * n as i64;
                scaled.is_integer().then(|| scaled.to_integer())
            })
            .collect()
    }

    pub fn shifted(&self, idx: usize, shift: &[i64]) -> usize {
        let mut out = 0;
        let mut rest = idx;
        for ((&stride, &n), &s) in self.strides.iter().zip(&self.shape).zip(shift) {
            let j = rest / stride;
            rest %= stride;
            out += (j as i64 + s).rem_euclid(n as i64) as usize * stride;
        }
        out
    }

    /// Neighbour one step forward along `axis`, wrapping around the torus.
    pub fn step(&self, idx: usize, axis: usize) -> usize {
        let j = (idx / self.strides[axis]) % self.shape[axis];
        if j + 1 == self.shape[axis] {
            idx - j * self.strides[axis]
        } else {
            idx + self.strides[axis]
        }
    }

    pub fn is_compatible(&self, dual: &DualGroup) -> bool {
        dual.dim() == self.dim()
            && dual.elements().iter().all(|w| self.shift_for_rational(w).is_some())
    }

    pub fn require_compatible(&self, dual: &DualGroup) -> Result<()> {
        if self.is_compatible(dual) {
            Ok(())
        } else {
            Err(Error::IncompatibleGrid(format!(
                "grid {:?} does not contain the translates by F (axis denominators {:?})",
                self.shape,
                dual.axis_denominators()
            )))
        }
    }

    /// Node shifts for every element of `F`, in the group's order.
    pub fn dual_shifts(&self, dual: &DualGroup) -> Result<Vec<Vec<i64>>> {
        self.require_compatible(dual)?;
        Ok(dual
            .elements()
            .iter()
            .map(|w| self.shift_for_rational(w).expect("checked"))
            .collect())
    }

    /// Axis-wise least common multiple with another grid.
    pub fn refine_with(&self, other: &Grid) -> Result<Grid> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Grid::new(self.shape.iter().zip(&other.shape).map(|(a, b)| a.lcm(b)).collect())
    }
}
