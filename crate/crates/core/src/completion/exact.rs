use crate::filters::working_grid;
use crate::lattice::{DilationMatrix, DualGroup};
use crate::torus::{bracket_on, BracketKind, Grid, TorusFunction};
use crate::{Complex64, Error, Result};

/// Residual allowed in `⟨h₀, h₀⟩′ = 1` before an input counts as normalized.
pub const NORMALIZED_TOL: f64 = 1e-8;

/// `sup |⟨h₀, h₀⟩′ − 1|`, failing with `NotNormalized` above [`NORMALIZED_TOL`].
pub fn require_normalized(h0: &TorusFunction, dual: &DualGroup, grid: &Grid) -> Result<f64> {
    let b = bracket_on(h0, h0, dual, BracketKind::Primed, grid)?;
    let r = b
        .values_on(grid)?
        .iter()
        .map(|v| (v - Complex64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max);
    if r > NORMALIZED_TOL {
        return Err(Error::NotNormalized(r));
    }
    Ok(r)
}

/// High-pass partner `h₁(x) = τ(x)·conj(h₀(x + w))` for `q = 2`, with `w` the
/// non-zero element of `F` and `τ` the character of the non-zero coset
/// representative, so that `τ(w) = −1`.
pub fn complete_q2(h0: &TorusFunction, a: &DilationMatrix) -> Result<TorusFunction> {
    if a.q() != 2 {
        return Err(Error::NotQ2(a.q()));
    }
    let dual = a.dual_group();
    let grid = working_grid([h0], &dual)?;
    require_normalized(h0, &dual, &grid)?;
    let w = dual.element_f64(1);
    let minus_w: Vec<f64> = w.iter().map(|x| -x).collect();
    let tau = TorusFunction::character(&a.coset_representatives().as_slice()[1]);
    tau.mul(&h0.conj().translate(&minus_w)?)
}

/// Splits `f` into `⟨f, h₀⟩′h₀` and the remainder, which is orthogonal to
/// `h₀`.
pub fn project_and_complement(
    f: &TorusFunction,
    h0: &TorusFunction,
    a: &DilationMatrix,
) -> Result<(TorusFunction, TorusFunction)> {
    let dual = a.dual_group();
    let grid = working_grid([f, h0], &dual)?;
    require_normalized(h0, &dual, &grid)?;
    let c = bracket_on(f, h0, &dual, BracketKind::Primed, &grid)?;
    let p = c.function().mul(&h0.grid_only(&grid)?)?;
    let rest = f.grid_only(&grid)?.sub(&p)?;
    Ok((p, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_dilation;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn haar_partner() {
        let a = validate_dilation(&[vec![2]]).unwrap();
        let h0 = TorusFunction::from_coeffs(1, [(vec![0], c(0.5)), (vec![1], c(0.5))]).unwrap();
        let h1 = complete_q2(&h0, &a).unwrap();
        let expected = TorusFunction::from_coeffs(1, [(vec![0], c(-0.5)), (vec![1], c(0.5))]).unwrap();
        let grid = Grid::new(vec![32]).unwrap();
        assert!(h1.sup_distance(&expected, &grid).unwrap() < 1e-15);
        assert!(h1.has_coefficients());
    }

    #[test]
    fn rejects_wrong_inputs() {
        let a3 = validate_dilation(&[vec![3]]).unwrap();
        let h = TorusFunction::constant(1, c(3f64.sqrt().recip()));
        assert!(matches!(complete_q2(&h, &a3), Err(Error::NotQ2(3))));
        let a = validate_dilation(&[vec![2]]).unwrap();
        let m0 = TorusFunction::from_coeffs(1, [(vec![0], c(1.0)), (vec![1], c(1.0))]).unwrap();
        assert!(matches!(complete_q2(&m0, &a), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn projection_splits() {
        let a = validate_dilation(&[vec![2]]).unwrap();
        let h0 = TorusFunction::from_coeffs(1, [(vec![0], c(0.5)), (vec![1], c(0.5))]).unwrap();
        let h1 = complete_q2(&h0, &a).unwrap();
        let grid = Grid::default_for(&a.dual_group());
        let (p, r) = project_and_complement(&h0.add(&h1).unwrap(), &h0, &a).unwrap();
        assert!(p.sup_distance(&h0, &grid).unwrap() < 1e-12);
        assert!(r.sup_distance(&h1, &grid).unwrap() < 1e-12);
        let (p, r) = project_and_complement(&h0, &h0, &a).unwrap();
        assert!(p.sup_distance(&h0, &grid).unwrap() < 1e-12);
        assert!(r.sup_norm(&grid).unwrap() < 1e-12);
    }
}
