mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use torfilter::completion::{
    align_sweep, complete_q2, gram_schmidt_smooth, householder_complete, project_and_complement, SweepOptions,
};
use torfilter::filters::{reconstruct, validate_family, FilterBank, FilterScale};
use torfilter::linalg::two_sided_defect;
use torfilter::torus::Grid;
use torfilter::Complex64;

/// Normalized `(h₀, h₁)` after a constant unitary mix of a base bank.
fn mixed(which: usize, t: f64, b: f64) -> FilterBank {
    let base = if which == 0 { haar_masks() } else { quincunx_masks() }.normalized();
    let (h0, h1) = (&base.filters()[0], &base.filters()[1]);
    let e = Complex64::from_polar(1.0, b);
    let f0 = h0.scale(c(t.cos())).add(&h1.scale(-e.conj() * t.sin())).unwrap();
    let f1 = h0.scale(e * t.sin()).add(&h1.scale(c(t.cos()))).unwrap();
    FilterBank::new(base.dilation().clone(), vec![f0, f1], FilterScale::Normalized).unwrap()
}

fn complex_row(parts: &[(f64, f64)]) -> Vec<Complex64> {
    let v: Vec<Complex64> = parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q2_completion_is_orthonormal(which in 0usize..2, t in 0.0f64..3.2, b in 0.0f64..6.3) {
        let bank = mixed(which, t, b);
        let h0 = bank.low_pass().clone();
        let h1 = complete_q2(&h0, bank.dilation()).unwrap();
        let family = FilterBank::new(bank.dilation().clone(), vec![h0, h1], FilterScale::Normalized).unwrap();
        prop_assert!(validate_family(&family, 1e-10).unwrap().residual() < 1e-10);
    }

    #[test]
    fn projection_split_is_idempotent(which in 0usize..2, t in 0.0f64..3.2, seed in any::<u64>()) {
        let bank = mixed(which, t, 0.7);
        let a = bank.dilation();
        let h0 = bank.low_pass();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, a.dim(), 3, 5);
        let (_, rest) = project_and_complement(&f, h0, a).unwrap();
        let (p2, rest2) = project_and_complement(&rest, h0, a).unwrap();
        let grid = rest.grid().unwrap().clone();
        prop_assert!(p2.sup_norm(&grid).unwrap() < 1e-12);
        prop_assert!(rest2.sup_distance(&rest, &grid).unwrap() < 1e-12);
    }

    #[test]
    fn householder_completion_recovers_row(parts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..9)) {
        prop_assume!(parts.iter().any(|&(a, b)| a.abs() + b.abs() > 1e-3));
        let row = complex_row(&parts);
        let m = householder_complete(&row).unwrap();
        for (j, z) in row.iter().enumerate() {
            prop_assert!((m[(0, j)] - z).norm() < 1e-12);
        }
        prop_assert!(two_sided_defect(&m) < 1e-12);
    }

    #[test]
    fn smoothing_preserves_the_span(t in 0.0f64..3.2, seed in any::<u64>()) {
        let eps = 1e-2;
        let family = mixed(0, t, 0.2);
        let noise = poly(1, &[(&[2], 3e-4), (&[-1], 2e-4), (&[3], -4e-4)]);
        let approximant = family.filters()[1].add(&noise).unwrap();
        let smoothed = gram_schmidt_smooth(&family, &[approximant], eps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, 1, 3, 4);
        let (_, old) = reconstruct(&f, &family).unwrap();
        let (_, new) = reconstruct(&f, &smoothed).unwrap();
        prop_assert!((old - new).abs() < 10.0 * eps);
        prop_assert!(validate_family(&smoothed, 1e-10).unwrap().pass());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sweep_jumps_shrink_when_a_continuous_completion_exists(t in 0.0f64..3.2, b in 0.0f64..6.3) {
        let bank = mixed(0, t, b);
        let options = SweepOptions::default();
        let jumps: Vec<f64> = [32usize, 64, 128]
            .iter()
            .map(|&n| align_sweep(bank.low_pass(), bank.dilation(), &Grid::new(vec![n]).unwrap(), &options).unwrap())
            .map(|o| o.report.max_jump)
            .collect();
        prop_assert!(jumps.windows(2).all(|w| w[1] < w[0]), "{:?}", jumps);
    }
}

#[test]
fn sweep_on_quincunx_closes_and_stays_covariant() {
    let bank = mixed(1, 0.5, 1.0);
    let grid = Grid::new(vec![32, 32]).unwrap();
    let outcome = align_sweep(bank.low_pass(), bank.dilation(), &grid, &SweepOptions::default()).unwrap();
    assert!(outcome.is_closed(), "{:?}", outcome.report);
    assert!(outcome.covariance_residual < 1e-12);
    assert!(outcome.gram_residual < 1e-10);
    assert!(validate_family(&outcome.bank, 1e-3).unwrap().pass());
}
