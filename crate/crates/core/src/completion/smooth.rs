use crate::filters::{FilterBank, FilterScale};
use crate::torus::{bracket_on, BracketKind, Grid, TorusFunction};
use crate::{Complex64, Error, Result};

/// Smallest acceptable pointwise value of `⟨f_j, f_j⟩′` before normalizing.
pub const NORMALIZATION_FLOOR: f64 = 0.25;

/// Rebuilds the high-pass members of `family` from nearby `approximants`.
///
/// Each `g_j` is projected against `h₀` and the members already rebuilt,
/// then divided by the pointwise square root of its bracket. The result is
/// orthonormal on the working grid and returned in the family's own scale.
pub fn gram_schmidt_smooth(
    family: &FilterBank,
    approximants: &[TorusFunction],
    eps: f64,
) -> Result<FilterBank> {
    let q = family.dilation().q() as usize;
    if family.len() != q {
        return Err(Error::WrongCount { expected: q, got: family.len() });
    }
    if approximants.len() != q - 1 {
        return Err(Error::WrongCount { expected: q - 1, got: approximants.len() });
    }
    let normalized = family.normalized();
    let dual = family.dilation().dual_group();
    let grid = crate::filters::working_grid(normalized.filters().iter().chain(approximants), &dual)?;
    let members: Vec<TorusFunction> =
        normalized.filters().iter().map(|f| f.grid_only(&grid)).collect::<Result<_>>()?;

    let mut rebuilt = vec![members[0].clone()];
    for (j, g) in approximants.iter().enumerate() {
        let index = j + 1;
        let mut f = g.grid_only(&grid)?;
        for h in &rebuilt {
            let c = bracket_on(&f, h, &dual, BracketKind::Primed, &grid)?;
            f = f.sub(&c.function().mul(h)?)?;
        }
        let norm = bracket_on(&f, &f, &dual, BracketKind::Primed, &grid)?.values_on(&grid)?;
        let min = norm.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        if min <= NORMALIZATION_FLOOR {
            return Err(Error::TooFarToNormalize { index, min });
        }
        let distance = g.sup_distance(&members[index], &grid)?;
        if distance > eps {
            return Err(Error::ApproximantTooFar { index, distance, eps });
        }
        let inv_sqrt: Vec<Complex64> = norm.iter().map(|v| Complex64::new(v.re.sqrt().recip(), 0.0)).collect();
        rebuilt.push(f.mul(&TorusFunction::from_grid_values(grid.clone(), inv_sqrt)?)?);
    }
    let out = FilterBank::new(family.dilation().clone(), rebuilt, FilterScale::Normalized)?;
    Ok(match family.scale() {
        FilterScale::Normalized => out,
        FilterScale::Mask => out.to_mask(),
    })
}

/// Sup distance between corresponding members of two banks on `grid`.
pub fn bank_distance(a: &FilterBank, b: &FilterBank, grid: &Grid) -> Result<Vec<f64>> {
    a.filters().iter().zip(b.filters()).map(|(f, g)| f.sup_distance(g, grid)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::validate_family;
    use crate::lattice::validate_dilation;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn haar() -> FilterBank {
        let a = validate_dilation(&[vec![2]]).unwrap();
        let h0 = TorusFunction::from_coeffs(1, [(vec![0], c(0.5)), (vec![1], c(0.5))]).unwrap();
        let h1 = TorusFunction::from_coeffs(1, [(vec![0], c(-0.5)), (vec![1], c(0.5))]).unwrap();
        FilterBank::new(a, vec![h0, h1], FilterScale::Normalized).unwrap()
    }

    #[test]
    fn idempotent_on_the_family() {
        let bank = haar();
        let out = gram_schmidt_smooth(&bank, &bank.filters()[1..], 1e-12).unwrap();
        let grid = bank.working_grid().unwrap();
        assert!(bank_distance(&bank, &out, &grid).unwrap().iter().all(|&d| d < 1e-14));
    }

    #[test]
    fn zero_approximant_cannot_be_normalized() {
        let bank = haar();
        let zero = TorusFunction::zero(1);
        assert!(matches!(
            gram_schmidt_smooth(&bank, &[zero], 1e-3),
            Err(Error::TooFarToNormalize { index: 1, .. })
        ));
    }

    #[test]
    fn perturbation_is_repaired() {
        let bank = haar();
        let bump = TorusFunction::from_coeffs(1, [(vec![2], c(1e-3)), (vec![-1], Complex64::new(0.0, 5e-4))]).unwrap();
        let g = bank.filters()[1].add(&bump).unwrap();
        let out = gram_schmidt_smooth(&bank, &[g], 1e-2).unwrap();
        assert!(validate_family(&out, 1e-10).unwrap().pass());
        let grid = out.working_grid().unwrap();
        assert!(bank_distance(&bank, &out, &grid).unwrap().iter().all(|&d| d < 1e-2));
    }
}
