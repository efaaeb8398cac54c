use serde::Serialize;

use crate::lattice::{DilationMatrix, DualGroup};
use crate::torus::{bracket_on, BracketKind, Grid, TorusFunction};
use crate::{Complex64, Error, Result};

/// Default sup-norm tolerance for the filter conditions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Scale convention of a bank: masks `m_j` with `m₀(0) = q`, or normalized
/// filters `h_j = q⁻¹m_j` with `h₀(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterScale {
    Mask,
    Normalized,
}

/// An ordered family of filters (low-pass first) for a dilation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank {
    dilation: DilationMatrix,
    filters: Vec<TorusFunction>,
    scale: FilterScale,
}

impl FilterBank {
    pub fn new(dilation: DilationMatrix, filters: Vec<TorusFunction>, scale: FilterScale) -> Result<Self> {
        if filters.is_empty() {
            return Err(Error::WrongCount { expected: dilation.q() as usize, got: 0 });
        }
        for f in &filters {
            if f.dim() != dilation.dim() {
                return Err(Error::DimensionMismatch { expected: dilation.dim(), got: f.dim() });
            }
        }
        Ok(Self { dilation, filters, scale })
    }

    pub fn dilation(&self) -> &DilationMatrix {
        &self.dilation
    }

    pub fn filters(&self) -> &[TorusFunction] {
        &self.filters
    }

    pub fn into_filters(self) -> Vec<TorusFunction> {
        self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn scale(&self) -> FilterScale {
        self.scale
    }

    pub fn is_normalized(&self) -> bool {
        self.scale == FilterScale::Normalized
    }

    pub fn low_pass(&self) -> &TorusFunction {
        &self.filters[0]
    }

    /// The same bank with `h_j = q⁻¹m_j`.
    pub fn normalized(&self) -> Self {
        self.rescaled(FilterScale::Normalized)
    }

    /// The same bank with `m_j = q·h_j`.
    pub fn to_mask(&self) -> Self {
        self.rescaled(FilterScale::Mask)
    }

    fn rescaled(&self, target: FilterScale) -> Self {
        let q = self.dilation.q() as f64;
        let factor = match (self.scale, target) {
            (a, b) if a == b => 1.0,
            (FilterScale::Mask, FilterScale::Normalized) => 1.0 / q,
            _ => q,
        };
        Self {
            dilation: self.dilation.clone(),
            filters: self.filters.iter().map(|f| f.scale(Complex64::new(factor, 0.0))).collect(),
            scale: target,
        }
    }

    /// Grid on which grid-only members live, or the default grid for `F`.
    pub fn working_grid(&self) -> Result<Grid> {
        working_grid(self.filters.iter(), &self.dilation.dual_group())
    }
}

/// First grid carried by any of `funcs`, else the default grid for `dual`.
/// Fails if that grid does not contain the translates by `F`.
pub fn working_grid<'a, I>(funcs: I, dual: &DualGroup) -> Result<Grid>
where
    I: IntoIterator<Item = &'a TorusFunction>,
{
    let mut found: Option<Grid> = None;
    for f in funcs {
        match (f.grid(), &found) {
            (Some(g), None) => found = Some(g.clone()),
            (Some(g), Some(h)) if g != h && !f.has_coefficients() => {
                return Err(Error::IncompatibleGrid(format!(
                    "filters sampled on {:?} and {:?}",
                    h.shape(),
                    g.shape()
                )))
            }
            _ => {}
        }
    }
    let grid = found.unwrap_or_else(|| Grid::default_for(dual));
    grid.require_compatible(dual)?;
    Ok(grid)
}

/// One checked condition with its numeric residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub condition: String,
    pub residual: f64,
    pub pass: bool,
    pub grid: Vec<usize>,
}

impl ValidationReport {
    fn new(condition: &str, residual: f64, tol: f64, grid: &Grid) -> Self {
        Self {
            condition: condition.to_string(),
            residual,
            pass: residual < tol,
            grid: grid.shape().to_vec(),
        }
    }
}

/// Outcome of [`validate_low_pass`]: conditions (i) and (ii).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowPassReport {
    pub checks: Vec<ValidationReport>,
    pub note: String,
}

impl LowPassReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Checks `|m₀(0) − q| < tol` and `sup |⟨m₀, m₀⟩ − q| < tol` (unprimed
/// bracket) for a mask-scale low-pass filter.
pub fn validate_low_pass(m0: &TorusFunction, a: &DilationMatrix, tol: f64) -> Result<LowPassReport> {
    let dual = a.dual_group();
    let grid = working_grid([m0], &dual)?;
    validate_low_pass_on(m0, a, tol, &grid)
}

pub fn validate_low_pass_on(
    m0: &TorusFunction,
    a: &DilationMatrix,
    tol: f64,
    grid: &Grid,
) -> Result<LowPassReport> {
    let dual = a.dual_group();
    let q = Complex64::new(a.q() as f64, 0.0);
    let at_zero = match m0.evaluate(&vec![0.0; a.dim()]) {
        Ok(v) => v,
        Err(Error::OffGrid) => m0.values_on(grid)?[0],
        Err(e) => return Err(e),
    };
    let value = (at_zero - q).norm();
    let b = bracket_on(m0, m0, &dual, BracketKind::Unprimed, grid)?;
    let norm = b.values_on(grid)?.iter().map(|v| (v - q).norm()).fold(0.0, f64::max);
    Ok(LowPassReport {
        checks: vec![
            ValidationReport::new("low-pass (i): m0(0) = q", value, tol, grid),
            ValidationReport::new("low-pass (ii): <m0,m0> = q", norm, tol, grid),
        ],
        note: "condition (iii) is not checked".to_string(),
    })
}

/// Outcome of [`validate_family`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    #[serde(flatten)]
    pub report: ValidationReport,
    /// `residuals[j][k] = sup |⟨m_j, m_k⟩ − target_jk|`.
    pub residuals: Vec<Vec<f64>>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.report.pass
    }

    pub fn residual(&self) -> f64 {
        self.report.residual
    }
}

/// Gram residual of the bank: `⟨m_j, m_k⟩ = q·δ_jk` (unprimed) for masks,
/// `⟨h_j, h_k⟩′ = δ_jk` for normalized filters.
pub fn validate_family(bank: &FilterBank, tol: f64) -> Result<FamilyReport> {
    let grid = bank.working_grid()?;
    validate_family_on(bank, tol, &grid)
}

pub fn validate_family_on(bank: &FilterBank, tol: f64, grid: &Grid) -> Result<FamilyReport> {
    let a = bank.dilation();
    let q = a.q() as usize;
    if bank.len() != q {
        return Err(Error::WrongCount { expected: q, got: bank.len() });
    }
    let dual = a.dual_group();
    let (kind, diag) = match bank.scale() {
        FilterScale::Mask => (BracketKind::Unprimed, q as f64),
        FilterScale::Normalized => (BracketKind::Primed, 1.0),
    };
    let values: Vec<Vec<Complex64>> =
        bank.filters().iter().map(|f| f.values_on(grid)).collect::<Result<_>>()?;
    let shifts = grid.dual_shifts(&dual)?;
    let factor = if kind == BracketKind::Unprimed { 1.0 / q as f64 } else { 1.0 };
    let mut residuals = vec![vec![0.0; q]; q];
    for j in 0..q {
        for k in j..q {
            let b = crate::torus::bracket_values(grid, &shifts, &values[j], &values[k], factor);
            let target = if j == k { diag } else { 0.0 };
            let r = b.iter().map(|v| (v - target).norm()).fold(0.0, f64::max);
            residuals[j][k] = r;
            residuals[k][j] = r;
        }
    }
    let worst = residuals.iter().flatten().copied().fold(0.0, f64::max);
    Ok(FamilyReport {
        report: ValidationReport::new("family: <m_j,m_k> = q delta_jk", worst, tol, grid),
        residuals,
    })
}
