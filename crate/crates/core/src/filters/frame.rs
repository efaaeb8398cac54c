use crate::lattice::DualGroup;
use crate::linalg::{max_abs, CMatrix};
use crate::torus::{bracket_on, BracketKind, Grid, InvariantFunction, TorusFunction};
use crate::{Complex64, Error, Result};

/// Tolerance for `P² = P` and `P = P*`.
pub const PROJECTION_TOL: f64 = 1e-10;

/// A square matrix of F-invariant functions that is pointwise a
/// self-adjoint idempotent.
#[derive(Clone, Debug)]
pub struct ModuleProjection {
    grid: Grid,
    dual: DualGroup,
    entries: Vec<Vec<InvariantFunction>>,
    values: Vec<Vec<Vec<Complex64>>>,
    residual: f64,
}

impl ModuleProjection {
    pub fn new(entries: Vec<Vec<InvariantFunction>>, dual: &DualGroup, grid: &Grid) -> Result<Self> {
        let m = entries.len();
        if let Some(bad) = entries.iter().find(|row| row.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: bad.len() });
        }
        grid.require_compatible(dual)?;
        let values = entries
            .iter()
            .map(|row| row.iter().map(|p| p.values_on(grid)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self { grid: grid.clone(), dual: dual.clone(), entries, values, residual: 0.0 };
        let mut worst = 0.0_f64;
        for idx in 0..grid.len() {
            let p = out.at(idx);
            worst = worst.max(max_abs(&(&p * &p - &p))).max(max_abs(&(p.adjoint() - &p)));
        }
        if worst > PROJECTION_TOL {
            return Err(Error::NotProjection { residual: worst });
        }
        out.residual = worst;
        Ok(out)
    }

    pub fn identity(size: usize, dual: &DualGroup, grid: &Grid) -> Result<Self> {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| InvariantFunction::constant(dual.dim(), Complex64::new(f64::from(u8::from(i == j)), 0.0)))
                    .collect()
            })
            .collect();
        Self::new(entries, dual, grid)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &InvariantFunction {
        &self.entries[i][j]
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Largest pointwise entry of `P² − P` and `P* − P`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn at(&self, idx: usize) -> CMatrix {
        let m = self.size();
        CMatrix::from_fn(m, m, |i, j| self.values[i][j][idx])
    }
}

/// The family `ξ_j = Σ_i P_ij e_i` together with the bracket it is a frame for.
#[derive(Clone, Debug)]
pub struct ModuleFrame {
    elements: Vec<TorusFunction>,
    dual: DualGroup,
    grid: Grid,
    kind: BracketKind,
}

impl ModuleFrame {
    pub fn elements(&self) -> &[TorusFunction] {
        &self.elements
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `Σ_j ⟨η, ξ_j⟩ ξ_j` and its sup distance from `η`.
    pub fn reconstruct(&self, eta: &TorusFunction) -> Result<(TorusFunction, f64)> {
        let grid = &self.grid;
        let mut acc = vec![Complex64::default(); grid.len()];
        for xi in &self.elements {
            let c = bracket_on(eta, xi, &self.dual, self.kind, grid)?.values_on(grid)?;
            for ((a, c), x) in acc.iter_mut().zip(&c).zip(xi.values_on(grid)?) {
                *a += c * x;
            }
        }
        let out = TorusFunction::from_grid_values(grid.clone(), acc)?;
        let residual = out.sup_distance(eta, grid)?;
        Ok((out, residual))
    }
}

/// Frame `ξ_j = P·e_j` for the range of `P`, given a basis `{e_i}` that is
/// orthonormal for `kind`.
pub fn frame_from_projection(
    p: &ModuleProjection,
    basis: &[TorusFunction],
    kind: BracketKind,
) -> Result<ModuleFrame> {
    let m = p.size();
    if basis.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: basis.len() });
    }
    let grid = p.grid();
    let basis_values: Vec<Vec<Complex64>> = basis.iter().map(|e| e.values_on(grid)).collect::<Result<_>>()?;
    let elements = (0..m)
        .map(|j| {
            let values = (0..grid.len())
                .map(|idx| (0..m).map(|i| p.values[i][j][idx] * basis_values[i][idx]).sum())
                .collect();
            TorusFunction::from_grid_values(grid.clone(), values)
        })
        .collect::<Result<_>>()?;
    Ok(ModuleFrame { elements, dual: p.dual.clone(), grid: grid.clone(), kind })
}
