use rayon::prelude::*;
use serde::Serialize;

use super::bank::{working_grid, FilterBank};
use crate::lattice::DualGroup;
use crate::linalg::{spectral_norm, CMatrix};
use crate::torus::{bracket_on, BracketKind, Grid, TorusFunction};
use crate::{Complex64, Result};

/// The matrix field `U(x)_{ji} = h_j(x − w_i)` on a grid, with columns in
/// the order of the elements of `F`.
#[derive(Clone, Debug)]
pub struct PolyphaseField {
    grid: Grid,
    dual: DualGroup,
    rows: usize,
    cols: usize,
    // Row-major `rows × cols` block per node.
    data: Vec<Complex64>,
}

/// Operator-norm defects `sup ‖UU* − I‖` and, for square fields,
/// `sup ‖U*U − I‖`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitarityDefect {
    pub row: f64,
    pub column: Option<f64>,
}

impl UnitarityDefect {
    pub fn max(&self) -> f64 {
        self.row.max(self.column.unwrap_or(0.0))
    }
}

impl PolyphaseField {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, idx: usize) -> CMatrix {
        let block = self.rows * self.cols;
        CMatrix::from_row_slice(self.rows, self.cols, &self.data[idx * block..(idx + 1) * block])
    }

    pub fn entry(&self, idx: usize, j: usize, i: usize) -> Complex64 {
        self.data[idx * self.rows * self.cols + j * self.cols + i]
    }

    /// `sup |U(x − w_k)_{ji} − U(x)_{j, w_i + w_k}|` over nodes and `k`.
    pub fn covariance_residual(&self) -> f64 {
        let shifts = self.grid.dual_shifts(&self.dual).expect("field grid is compatible");
        let mut worst = 0.0_f64;
        for (k, s) in shifts.iter().enumerate() {
            let back: Vec<i64> = s.iter().map(|x| -x).collect();
            for idx in 0..self.grid.len() {
                let moved = self.grid.shifted(idx, &back);
                for j in 0..self.rows {
                    for i in 0..self.cols {
                        let target = self.entry(idx, j, self.dual.add_index(i, k));
                        worst = worst.max((self.entry(moved, j, i) - target).norm());
                    }
                }
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> UnitarityDefect {
        let (row, column) = (0..self.grid.len())
            .into_par_iter()
            .map(|idx| {
                let u = self.at(idx);
                let adj = u.adjoint();
                let row = spectral_norm(&(&u * &adj - CMatrix::identity(self.rows, self.rows)));
                let col = if self.is_square() {
                    spectral_norm(&(&adj * &u - CMatrix::identity(self.cols, self.cols)))
                } else {
                    0.0
                };
                (row, col)
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        UnitarityDefect { row, column: self.is_square().then_some(column) }
    }
}

/// Builds the polyphase field of `bank` (rescaled to normalized filters if
/// needed) on the bank's working grid.
pub fn polyphase(bank: &FilterBank) -> Result<PolyphaseField> {
    let grid = bank.working_grid()?;
    polyphase_on(bank, &grid)
}

pub fn polyphase_on(bank: &FilterBank, grid: &Grid) -> Result<PolyphaseField> {
    let normalized = bank.normalized();
    let dual = bank.dilation().dual_group();
    polyphase_of(normalized.filters(), &dual, grid)
}

/// Polyphase field of an arbitrary (possibly partial) family of normalized
/// filters.
pub fn polyphase_of(filters: &[TorusFunction], dual: &DualGroup, grid: &Grid) -> Result<PolyphaseField> {
    let shifts = grid.dual_shifts(dual)?;
    let values: Vec<Vec<Complex64>> = filters.iter().map(|f| f.values_on(grid)).collect::<Result<_>>()?;
    let (rows, cols) = (filters.len(), dual.len());
    let backs: Vec<Vec<i64>> = shifts.iter().map(|s| s.iter().map(|x| -x).collect()).collect();
    let data = (0..grid.len())
        .into_par_iter()
        .flat_map_iter(|idx| {
            let nodes: Vec<usize> = backs.iter().map(|b| grid.shifted(idx, b)).collect();
            let values = &values;
            (0..rows).flat_map(move |j| nodes.clone().into_iter().map(move |n| values[j][n]))
        })
        .collect();
    Ok(PolyphaseField { grid: grid.clone(), dual: dual.clone(), rows, cols, data })
}

/// `g = Σ_i ⟨f, h_i⟩′ h_i` and `sup |g − f|`, on the bank's working grid
/// refined to carry `f`.
pub fn reconstruct(f: &TorusFunction, bank: &FilterBank) -> Result<(TorusFunction, f64)> {
    let normalized = bank.normalized();
    let dual = bank.dilation().dual_group();
    let grid = working_grid(std::iter::once(f).chain(normalized.filters()), &dual)?;
    let mut acc = TorusFunction::from_grid_values(grid.clone(), vec![Complex64::default(); grid.len()])?;
    for h in normalized.filters() {
        let c = bracket_on(f, h, &dual, BracketKind::Primed, &grid)?;
        acc = acc.add(&c.function().mul(&h.grid_only(&grid)?)?)?;
    }
    let residual = acc.sup_distance(f, &grid)?;
    Ok((acc, residual))
}
