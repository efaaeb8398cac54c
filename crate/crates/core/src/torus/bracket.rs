use super::{Grid, TorusFunction};
use crate::lattice::{CosetReps, DilationMatrix, DualGroup};
use crate::{Complex64, Error, Result};

/// Residual above which a function is not accepted as F-invariant.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Which normalization of the bracket product to use.
///
/// `Unprimed` averages over `F` (carries `q⁻¹`); `Primed` sums over `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    Unprimed,
    Primed,
}

impl BracketKind {
    fn factor(self, q: usize) -> f64 {
        match self {
            BracketKind::Unprimed => 1.0 / q as f64,
            BracketKind::Primed => 1.0,
        }
    }
}

/// A function on `Tⁿ` that is invariant under translation by `F`, i.e. an
/// element of the algebra `C(Tⁿ/F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFunction {
    function: TorusFunction,
    residual: f64,
}

impl InvariantFunction {
    /// Tags `f` as invariant after checking translation residuals on `grid`.
    pub fn new(f: TorusFunction, dual: &DualGroup, grid: &Grid) -> Result<Self> {
        let residual = invariance_residual(&f, dual, grid)?;
        let scale = f.sup_norm(grid)?.max(1.0);
        if residual > INVARIANCE_TOL * scale {
            return Err(Error::NotInvariant(residual));
        }
        Ok(Self { function: f, residual })
    }

    /// Coefficient function whose support already lies in `AZⁿ`.
    pub fn from_lattice_coeffs(f: TorusFunction, a: &DilationMatrix) -> Result<Self> {
        let coeffs = f.coefficients().ok_or(Error::NoCoefficientForm)?;
        if coeffs.keys().any(|k| !a.in_lattice(k)) {
            return Err(Error::NotInvariant(f64::INFINITY));
        }
        Ok(Self { function: f, residual: 0.0 })
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self { function: TorusFunction::constant(dim, c), residual: 0.0 }
    }

    /// Largest observed `|f(x − w) − f(x)|` when the tag was checked.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn function(&self) -> &TorusFunction {
        &self.function
    }

    pub fn into_function(self) -> TorusFunction {
        self.function
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        self.function.evaluate(x)
    }

    pub fn values_on(&self, grid: &Grid) -> Result<Vec<Complex64>> {
        self.function.values_on(grid)
    }

    /// Module action `a·f`.
    pub fn act(&self, f: &TorusFunction) -> Result<TorusFunction> {
        self.function.mul(f)
    }

    pub fn conj(&self) -> Self {
        Self { function: self.function.conj(), residual: self.residual }
    }
}

/// The bracket `⟨f, g⟩` on the grid shared by `f` and `g`, or on the default
/// grid for `F` when both are coefficient functions.
pub fn bracket(
    f: &TorusFunction,
    g: &TorusFunction,
    dual: &DualGroup,
    kind: BracketKind,
) -> Result<InvariantFunction> {
    let grid = f.common_grid(g)?.unwrap_or_else(|| Grid::default_for(dual));
    bracket_on(f, g, dual, kind, &grid)
}

/// `⟨f, g⟩(x) = c Σ_{w∈F} f(x − w) conj(g(x − w))` at the nodes of `grid`,
/// with `c = q⁻¹` (unprimed) or `1` (primed).
pub fn bracket_on(
    f: &TorusFunction,
    g: &TorusFunction,
    dual: &DualGroup,
    kind: BracketKind,
    grid: &Grid,
) -> Result<InvariantFunction> {
    let shifts = grid.dual_shifts(dual)?;
    let fv = f.values_on(grid)?;
    let gv = g.values_on(grid)?;
    let values = bracket_values(grid, &shifts, &fv, &gv, kind.factor(dual.len()));
    let out = TorusFunction::from_grid_values(grid.clone(), values)?;
    InvariantFunction::new(out, dual, grid)
}

pub(crate) fn bracket_values(
    grid: &Grid,
    shifts: &[Vec<i64>],
    fv: &[Complex64],
    gv: &[Complex64],
    factor: f64,
) -> Vec<Complex64> {
    let back: Vec<Vec<i64>> = shifts.iter().map(|s| s.iter().map(|x| -x).collect()).collect();
    (0..grid.len())
        .map(|idx| {
            let s: Complex64 = back
                .iter()
                .map(|b| {
                    let j = grid.shifted(idx, b);
                    fv[j] * gv[j].conj()
                })
                .sum();
            s * factor
        })
        .collect()
}

/// The bracket computed by decimation: multiply coefficients of `f` and
/// `conj(g)` and keep the frequencies in `AZⁿ`.
pub fn coefficient_bracket(
    f: &TorusFunction,
    g: &TorusFunction,
    a: &DilationMatrix,
    kind: BracketKind,
) -> Result<InvariantFunction> {
    if !f.has_coefficients() || !g.has_coefficients() {
        return Err(Error::NoCoefficientForm);
    }
    let product = f.mul(&g.conj())?;
    let q = a.q() as f64;
    let scale = match kind {
        BracketKind::Unprimed => 1.0,
        BracketKind::Primed => q,
    };
    let kept = product
        .coefficients()
        .expect("coefficient product")
        .iter()
        .filter(|(k, _)| a.in_lattice(k))
        .map(|(k, &c)| (k.clone(), c * scale));
    let out = TorusFunction::from_coeffs(a.dim(), kept)?;
    Ok(InvariantFunction { function: out, residual: 0.0 })
}

/// The characters `e_j(x) = exp(2πi p_j·x)`, orthonormal for the unprimed
/// bracket and a free basis of the module over the invariant functions.
pub fn standard_orthonormal_basis(a: &DilationMatrix, reps: &CosetReps) -> Vec<TorusFunction> {
    debug_assert_eq!(reps.len() as u64, a.q());
    reps.iter().map(|p| TorusFunction::character(p)).collect()
}

/// `max_{w∈F} sup_x |f(x − w) − f(x)|` over the nodes of `grid`.
pub fn invariance_residual(f: &TorusFunction, dual: &DualGroup, grid: &Grid) -> Result<f64> {
    let shifts = grid.dual_shifts(dual)?;
    let v = f.values_on(grid)?;
    let mut worst = 0.0_f64;
    for s in &shifts {
        for (idx, value) in v.iter().enumerate() {
            worst = worst.max((v[grid.shifted(idx, s)] - value).norm());
        }
    }
    Ok(worst)
}
