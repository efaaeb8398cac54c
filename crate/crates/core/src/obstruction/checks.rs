use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::filter::{assemble_h0, dilation};
use super::path::{n0, w_path};
use super::sphere::{factorization_check, phi, pinch, u0, u0_plus_one, PhiSign, Sphere4Point};
use crate::completion::{align_sweep, SweepOptions, SweepOutcome};
use crate::lattice::validate_dilation;
use crate::linalg::{two_sided_defect, CMatrix};
use crate::torus::{Grid, TorusFunction};
use crate::{Complex64, Result};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const IDENTITY_TOL: f64 = 1e-11;
pub const PINCH_TOL: f64 = 1e-12;

/// A uniformly distributed point of `S⁴`.
pub fn random_sphere4<R: Rng + ?Sized>(rng: &mut R) -> Sphere4Point {
    loop {
        let x: [f64; 5] = std::array::from_fn(|_| StandardNormal.sample(rng));
        if let Ok(p) = Sphere4Point::from_real(x) {
            return p;
        }
    }
}

/// One named residual of the identity suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default, Clone, Copy)]
struct Worst {
    u0: f64,
    phi_plus: f64,
    phi_minus: f64,
    w: f64,
    factorization: f64,
    w0: f64,
    w1: f64,
    n0_loop: f64,
    n0_norm: f64,
    pinch: f64,
}

impl Worst {
    fn merge(self, o: Self) -> Self {
        Self {
            u0: self.u0.max(o.u0),
            phi_plus: self.phi_plus.max(o.phi_plus),
            phi_minus: self.phi_minus.max(o.phi_minus),
            w: self.w.max(o.w),
            factorization: self.factorization.max(o.factorization),
            w0: self.w0.max(o.w0),
            w1: self.w1.max(o.w1),
            n0_loop: self.n0_loop.max(o.n0_loop),
            n0_norm: self.n0_norm.max(o.n0_norm),
            pinch: self.pinch.max(o.pinch),
        }
    }
}

struct Sample {
    p: Sphere4Point,
    t: f64,
    xi_point: super::sphere::Sphere5Point,
    boundary: [f64; 4],
}

fn draw(rng: &mut ChaCha8Rng) -> Sample {
    let p = random_sphere4(rng);
    let t = rng.random_range(0.0..=1.0);
    // A uniformly random point of S⁵ for the φ± checks.
    let x: [f64; 6] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let n = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let xi_point = super::sphere::Sphere5Point {
        v: [Complex64::new(x[0] / n, x[1] / n), Complex64::new(x[2] / n, x[3] / n)],
        xi: Complex64::new(x[4] / n, x[5] / n),
    };
    let mut boundary: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
    let axis = rng.random_range(0..4);
    boundary[axis] = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    Sample { p, t, xi_point, boundary }
}

fn evaluate(s: &Sample) -> Result<Worst> {
    let e3 = [Complex64::default(), Complex64::default(), Complex64::new(1.0, 0.0)];
    let dist3 = |a: &[Complex64; 3], b: &[Complex64; 3]| {
        a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    };
    let w = w_path(s.t, &s.p)?.value;
    let w0 = w_path(0.0, &s.p)?.value;
    let w1 = w_path(1.0, &s.p)?.value;
    let n_t = n0(s.t, &s.p)?;
    // The boundary point and its mirror image under the torus identification.
    let mut mirror = s.boundary;
    for c in mirror.iter_mut() {
        if c.abs() == 1.0 {
            *c = -*c;
        }
    }
    let south = Sphere4Point::south();
    Ok(Worst {
        u0: two_sided_defect(&u0(&s.p)?),
        phi_plus: two_sided_defect(&phi(&s.xi_point, PhiSign::Plus)?),
        phi_minus: two_sided_defect(&phi(&s.xi_point, PhiSign::Minus)?),
        w: two_sided_defect(&w),
        factorization: factorization_check(&s.p)?,
        w0: (w0 - u0_plus_one(&s.p)?).norm(),
        w1: (w1 - CMatrix::identity(3, 3)).norm(),
        n0_loop: dist3(&n0(0.0, &s.p)?, &e3).max(dist3(&n0(1.0, &s.p)?, &e3)),
        n0_norm: (n_t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs(),
        pinch: pinch(s.boundary)
            .distance(&south)
            .max(pinch(s.boundary).distance(&pinch(mirror))),
    })
}

/// Checks every stated identity of the construction at `samples` seeded
/// random points.
pub fn check_identities(samples: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Sample> = (0..samples).map(|_| draw(&mut rng)).collect();
    let worst = draws
        .par_iter()
        .map(evaluate)
        .try_reduce(Worst::default, |a, b| Ok(a.merge(b)))?;
    let check = |name: &str, residual: f64, tol: f64| IdentityCheck {
        name: name.to_string(),
        residual,
        tol,
        pass: residual < tol,
    };
    Ok(IdentityReport {
        samples,
        seed,
        checks: vec![
            check("u0 unitarity", worst.u0, IDENTITY_TOL),
            check("phi+ unitarity", worst.phi_plus, IDENTITY_TOL),
            check("phi- unitarity", worst.phi_minus, IDENTITY_TOL),
            check("w_t unitarity", worst.w, IDENTITY_TOL),
            check("factorization", worst.factorization, IDENTITY_TOL),
            check("w_0 = u0 + 1", worst.w0, IDENTITY_TOL),
            check("w_1 = identity", worst.w1, IDENTITY_TOL),
            check("n0 loop", worst.n0_loop, IDENTITY_TOL),
            check("n0 unit norm", worst.n0_norm, IDENTITY_TOL),
            check("pinch boundary collapse", worst.pinch, PINCH_TOL),
        ],
    })
}

/// Maximum sweep jump per resolution of a ladder.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub case: String,
    pub resolutions: Vec<Vec<usize>>,
    pub max_jumps: Vec<f64>,
    /// Jumps of the low-pass row alone, for scale.
    pub reference_jumps: Vec<f64>,
    pub verdict_note: String,
}

pub const VERDICT_NOTE: &str = "demonstration-not-proof";

pub const HAAR_LADDER: [usize; 3] = [64, 128, 256];
pub const OBSTRUCTION_LADDER: [[usize; 5]; 3] = [[6, 6, 6, 6, 6], [9, 8, 8, 8, 8], [12, 8, 8, 8, 8]];

fn ladder<F>(case: &str, resolutions: Vec<Vec<usize>>, mut run: F) -> Result<(DemoReport, Vec<SweepOutcome>)>
where
    F: FnMut(&[usize]) -> Result<SweepOutcome>,
{
    let outcomes = resolutions.iter().map(|r| run(r)).collect::<Result<Vec<_>>>()?;
    let report = DemoReport {
        case: case.to_string(),
        max_jumps: outcomes.iter().map(|o| o.report.max_jump).collect(),
        reference_jumps: outcomes.iter().map(|o| o.reference_jump).collect(),
        resolutions,
        verdict_note: VERDICT_NOTE.to_string(),
    };
    Ok((report, outcomes))
}

/// Sweeps the Haar low-pass filter at each resolution.
pub fn haar_control(resolutions: &[usize], options: &SweepOptions) -> Result<(DemoReport, Vec<SweepOutcome>)> {
    let a = validate_dilation(&[vec![2]])?;
    let half = Complex64::new(0.5, 0.0);
    let h0 = TorusFunction::from_coeffs(1, [(vec![0], half), (vec![1], half)])?;
    ladder("haar-control", resolutions.iter().map(|&n| vec![n]).collect(), |r| {
        align_sweep(&h0, &a, &Grid::new(r.to_vec())?, options)
    })
}

/// Sweeps the calibrated obstruction filter at each resolution.
pub fn obstruction_ladder(
    resolutions: &[Vec<usize>],
    options: &SweepOptions,
) -> Result<(DemoReport, Vec<SweepOutcome>)> {
    let a = dilation();
    ladder("obstruction-h0", resolutions.to_vec(), |r| {
        let h0 = assemble_h0(r, true)?;
        align_sweep(&h0, &a, &Grid::new(r.to_vec())?, options)
    })
}

/// Relaxation budget used for the obstruction ladder.
pub const OBSTRUCTION_RELAX_ITERS: usize = 200;

/// Both ladders: the Haar control and the obstruction filter.
pub fn demo_completion_failure(
    haar: &[usize],
    obstruction: &[Vec<usize>],
    options: &SweepOptions,
) -> Result<Vec<DemoReport>> {
    let (control, _) = haar_control(haar, options)?;
    let obstruction_options = SweepOptions { relax_iters: options.relax_iters.min(OBSTRUCTION_RELAX_ITERS), ..*options };
    let (obs, _) = obstruction_ladder(obstruction, &obstruction_options)?;
    Ok(vec![control, obs])
}
