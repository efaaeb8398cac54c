//! Functions on the torus `Tⁿ = Rⁿ/Zⁿ`.

mod bracket;
mod function;
mod grid;

pub use bracket::{
    bracket, bracket_on, coefficient_bracket, invariance_residual, standard_orthonormal_basis,
    BracketKind, InvariantFunction, INVARIANCE_TOL,
};
pub(crate) use bracket::bracket_values;
pub use function::{Coefficients, Samples, TorusFunction};
pub(crate) use function::eval_coeffs;
pub use grid::{Grid, DEFAULT_OVERSAMPLING};
