#![allow(dead_code)]

use rand::Rng;
use torfilter::filters::{FilterBank, FilterScale};
use torfilter::lattice::{validate_dilation, DilationMatrix};
use torfilter::torus::TorusFunction;
use torfilter::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn dyadic() -> DilationMatrix {
    validate_dilation(&[vec![2]]).unwrap()
}

pub fn triadic() -> DilationMatrix {
    validate_dilation(&[vec![3]]).unwrap()
}

pub fn quincunx() -> DilationMatrix {
    validate_dilation(&[vec![1, 1], vec![1, -1]]).unwrap()
}

/// Cyclic 3-D dilation with `A³ = 2I`, so `q = 2`.
pub fn cyclic3() -> DilationMatrix {
    validate_dilation(&[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
}

pub fn twice_identity2() -> DilationMatrix {
    validate_dilation(&[vec![2, 0], vec![0, 2]]).unwrap()
}

pub fn poly(dim: usize, terms: &[(&[i64], f64)]) -> TorusFunction {
    TorusFunction::from_coeffs(dim, terms.iter().map(|(k, v)| (k.to_vec(), c(*v)))).unwrap()
}

/// Haar masks `1 + e₁`, `−1 + e₁` for `A = [[2]]`.
pub fn haar_masks() -> FilterBank {
    let m0 = poly(1, &[(&[0], 1.0), (&[1], 1.0)]);
    let m1 = poly(1, &[(&[0], -1.0), (&[1], 1.0)]);
    FilterBank::new(dyadic(), vec![m0, m1], FilterScale::Mask).unwrap()
}

pub fn haar_low_pass() -> TorusFunction {
    poly(1, &[(&[0], 0.5), (&[1], 0.5)])
}

/// Quincunx masks `1 + e^{2πix₁}`, `−1 + e^{2πix₁}`.
pub fn quincunx_masks() -> FilterBank {
    let m0 = poly(2, &[(&[0, 0], 1.0), (&[1, 0], 1.0)]);
    let m1 = poly(2, &[(&[0, 0], -1.0), (&[1, 0], 1.0)]);
    FilterBank::new(quincunx(), vec![m0, m1], FilterScale::Mask).unwrap()
}

/// Daubechies-4 low-pass mask, `m₀(0) = 2`.
pub fn daubechies4_mask() -> TorusFunction {
    let s = 3f64.sqrt();
    let c = [(1.0 + s) / 4.0, (3.0 + s) / 4.0, (3.0 - s) / 4.0, (1.0 - s) / 4.0];
    TorusFunction::from_coeffs(1, c.iter().enumerate().map(|(k, &v)| (vec![k as i64], Complex64::new(v, 0.0))))
        .unwrap()
}

/// Tensor-product Haar bank for `A = 2I` in two variables.
pub fn tensor_haar_masks() -> FilterBank {
    let h = [[1.0, 1.0], [-1.0, 1.0]];
    let mut filters = Vec::new();
    for a in h {
        for b in h {
            let mut terms = Vec::new();
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    terms.push((vec![i as i64, j as i64], Complex64::new(x * y, 0.0)));
                }
            }
            filters.push(TorusFunction::from_coeffs(2, terms).unwrap());
        }
    }
    FilterBank::new(twice_identity2(), filters, FilterScale::Mask).unwrap()
}

/// Normalized characters `3^{-1/2} e^{2πijx}`, `j = 0, 1, 2`, for `A = [[3]]`.
pub fn lazy_triadic() -> FilterBank {
    let s = 1.0 / 3f64.sqrt();
    let filters = (0..3).map(|j| poly(1, &[(&[j], s)])).collect();
    FilterBank::new(triadic(), filters, FilterScale::Normalized).unwrap()
}

/// A random trigonometric polynomial with frequencies in `[−degree, degree]ⁿ`.
pub fn random_poly<R: Rng>(rng: &mut R, dim: usize, degree: i64, terms: usize) -> TorusFunction {
    let entries: Vec<(Vec<i64>, Complex64)> = (0..terms)
        .map(|_| {
            let k = (0..dim).map(|_| rng.random_range(-degree..=degree)).collect();
            (k, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        })
        .collect();
    TorusFunction::from_coeffs(dim, entries).unwrap()
}

/// Direct evaluation of `c Σ_w f(x − w) conj(g(x − w))` at an arbitrary point.
pub fn bracket_at(f: &TorusFunction, g: &TorusFunction, a: &DilationMatrix, factor: f64, x: &[f64]) -> Complex64 {
    let dual = a.dual_group();
    (0..dual.len())
        .map(|i| {
            let w = dual.element_f64(i);
            let y: Vec<f64> = x.iter().zip(&w).map(|(x, w)| x - w).collect();
            f.evaluate(&y).unwrap() * g.evaluate(&y).unwrap().conj()
        })
        .sum::<Complex64>()
        * factor
}
