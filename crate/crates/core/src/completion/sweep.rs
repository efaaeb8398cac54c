use serde::Serialize;

use super::exact::require_normalized;
use super::householder::householder_complete;
use crate::filters::{polyphase_of, validate_family_on, FilterBank, FilterScale};
use crate::lattice::DilationMatrix;
use crate::linalg::{polar_unitary, CMatrix};
use crate::torus::{Grid, TorusFunction};
use crate::{Complex64, Result};

/// Jump below which a completed family counts as closed on the torus.
pub const DEFAULT_JUMP_TOL: f64 = 0.2;
pub const DEFAULT_RELAX_ITERS: usize = 2000;
pub const DEFAULT_RELAX_TOL: f64 = 1e-10;

/// Order in which grid nodes are visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SweepOrder {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

impl SweepOrder {
    pub fn name(self) -> &'static str {
        match self {
            SweepOrder::Lexicographic => "lexicographic",
            SweepOrder::ReverseLexicographic => "reverse-lexicographic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub order: SweepOrder,
    pub jump_tol: f64,
    /// Gauss–Seidel passes after the initial transport sweep.
    pub relax_iters: usize,
    /// Stop relaxing once no node moves by more than this (Frobenius).
    pub relax_tol: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            order: SweepOrder::default(),
            jump_tol: DEFAULT_JUMP_TOL,
            relax_iters: DEFAULT_RELAX_ITERS,
            relax_tol: DEFAULT_RELAX_TOL,
        }
    }
}

/// Closure summary of a sweep; `closed == false` is the failure report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub closed: bool,
    pub max_jump: f64,
    pub location: Vec<f64>,
    pub grid: Vec<usize>,
    pub sweep: String,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub report: SweepReport,
    /// Candidate family `(h₀, h₁, …)` in normalized scale, sampled on the grid.
    pub bank: FilterBank,
    /// Largest jump of the low-pass polyphase row over the same edges.
    pub reference_jump: f64,
    pub covariance_residual: f64,
    pub gram_residual: f64,
    pub relax_passes: usize,
}

impl SweepOutcome {
    pub fn is_closed(&self) -> bool {
        self.report.closed
    }

    /// The bank if the sweep closed, the report otherwise.
    pub fn into_result(self) -> std::result::Result<FilterBank, SweepReport> {
        if self.report.closed {
            Ok(self.bank)
        } else {
            Err(self.report)
        }
    }
}

/// Heuristic continuous completion of a normalized low-pass filter.
///
/// Work happens in the coordinates `H_k = ⟨h₀, b_k⟩′` with respect to the
/// orthonormal characters `b_k = q^{-1/2} e_{p_k}`. These are F-invariant, so
/// the sweep runs over F-orbits of grid nodes and every completion it builds
/// is automatically covariant. At each orbit the row `H` is completed by a
/// Householder reflection; the complement rows are rotated by the closest
/// unitary onto the already-visited parent, then relaxed against all
/// neighbours. Jumps are measured on the resulting polyphase rows between
/// neighbouring grid nodes, across every wrap-around of the torus.
pub fn align_sweep(
    h0: &TorusFunction,
    a: &DilationMatrix,
    grid: &Grid,
    options: &SweepOptions,
) -> Result<SweepOutcome> {
    let dual = a.dual_group();
    grid.require_compatible(&dual)?;
    require_normalized(h0, &dual, grid)?;
    let q = dual.len();
    let shifts = grid.dual_shifts(&dual)?;
    let h0v = h0.values_on(grid)?;
    let scale = (q as f64).sqrt().recip();
    let basis: Vec<Vec<Complex64>> = a
        .coset_representatives()
        .iter()
        .map(|p| {
            TorusFunction::character(p)
                .values_on(grid)
                .map(|v| v.into_iter().map(|z| z * scale).collect())
        })
        .collect::<Result<_>>()?;

    let orbits = Orbits::new(grid, &shifts, options.order);
    let n_orbits = orbits.reps.len();

    let coordinates = |idx: usize| -> Vec<Complex64> {
        (0..q)
            .map(|k| {
                shifts
                    .iter()
                    .map(|s| {
                        let back: Vec<i64> = s.iter().map(|x| -x).collect();
                        let j = grid.shifted(idx, &back);
                        h0v[j] * basis[k][j].conj()
                    })
                    .sum()
            })
            .collect()
    };

    let start: Vec<CMatrix> = orbits
        .reps
        .iter()
        .map(|&idx| {
            let h = coordinates(idx);
            let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let h: Vec<Complex64> = h.into_iter().map(|z| z / norm).collect();
            householder_complete(&h).map(|m| m.rows(1, q - 1).into_owned())
        })
        .collect::<Result<_>>()?;

    let mut complement: Vec<CMatrix> = Vec::with_capacity(n_orbits);
    for (pos, c0) in start.iter().enumerate() {
        let aligned = match orbits.parent[pos] {
            Some(parent) => polar_unitary(&(&complement[parent] * c0.adjoint())) * c0,
            None => c0.clone(),
        };
        complement.push(aligned);
    }

    let mut relax_passes = 0;
    for _ in 0..options.relax_iters {
        relax_passes += 1;
        let mut moved = 0.0_f64;
        for pos in 0..n_orbits {
            let nbrs = &orbits.neighbours[pos];
            if nbrs.is_empty() {
                continue;
            }
            let mut pull = CMatrix::zeros(q - 1, q);
            for &n in nbrs {
                pull += &complement[n];
            }
            let updated = polar_unitary(&(pull * start[pos].adjoint())) * &start[pos];
            moved = moved.max((&updated - &complement[pos]).norm());
            complement[pos] = updated;
        }
        if moved < options.relax_tol {
            break;
        }
    }

    let high: Vec<Vec<Complex64>> = (0..q - 1)
        .map(|j| {
            (0..grid.len())
                .map(|idx| {
                    let c = &complement[orbits.position[orbits.rep_of[idx]]];
                    (0..q).map(|k| c[(j, k)] * basis[k][idx]).sum()
                })
                .collect()
        })
        .collect();

    let (max_jump, at) = max_row_jump(grid, &shifts, &high);
    let (reference_jump, _) = max_row_jump(grid, &shifts, std::slice::from_ref(&h0v));

    let mut filters = vec![h0.clone()];
    for values in high {
        filters.push(TorusFunction::from_grid_values(grid.clone(), values)?);
    }
    let bank = FilterBank::new(a.clone(), filters, FilterScale::Normalized)?;
    let covariance_residual = polyphase_of(bank.filters(), &dual, grid)?.covariance_residual();
    let gram_residual = validate_family_on(&bank, 0.0, grid)?.residual();

    Ok(SweepOutcome {
        report: SweepReport {
            closed: max_jump < options.jump_tol,
            max_jump,
            location: grid.point(at),
            grid: grid.shape().to_vec(),
            sweep: options.order.name().to_string(),
        },
        bank,
        reference_jump,
        covariance_residual,
        gram_residual,
        relax_passes,
    })
}

/// F-orbits of grid nodes, each represented by its first node in sweep order.
struct Orbits {
    rep_of: Vec<usize>,
    /// Representative nodes in sweep order.
    reps: Vec<usize>,
    /// Node index of a representative ↦ its position in `reps`.
    position: Vec<usize>,
    parent: Vec<Option<usize>>,
    neighbours: Vec<Vec<usize>>,
}

impl Orbits {
    fn new(grid: &Grid, shifts: &[Vec<i64>], order: SweepOrder) -> Self {
        let first = |a: usize, b: usize| match order {
            SweepOrder::Lexicographic => a.min(b),
            SweepOrder::ReverseLexicographic => a.max(b),
        };
        let rep_of: Vec<usize> = (0..grid.len())
            .map(|idx| shifts.iter().map(|s| grid.shifted(idx, s)).fold(idx, first))
            .collect();
        let mut reps: Vec<usize> = (0..grid.len()).filter(|&i| rep_of[i] == i).collect();
        if order == SweepOrder::ReverseLexicographic {
            reps.reverse();
        }
        let mut position = vec![usize::MAX; grid.len()];
        for (p, &idx) in reps.iter().enumerate() {
            position[idx] = p;
        }
        let dim = grid.dim();
        let unit = |axis: usize, sign: i64| -> Vec<i64> {
            (0..dim).map(|a| if a == axis { sign } else { 0 }).collect()
        };
        let parent = reps
            .iter()
            .map(|&idx| {
                let multi = grid.multi_index(idx);
                let axis = match order {
                    SweepOrder::Lexicographic => (0..dim).rev().find(|&a| multi[a] > 0),
                    SweepOrder::ReverseLexicographic => {
                        (0..dim).rev().find(|&a| multi[a] + 1 < grid.shape()[a])
                    }
                }?;
                let sign = if order == SweepOrder::Lexicographic { -1 } else { 1 };
                let p = position[rep_of[grid.shifted(idx, &unit(axis, sign))]];
                (p != position[idx]).then_some(p)
            })
            .collect();
        let neighbours = reps
            .iter()
            .map(|&idx| {
                let own = position[idx];
                (0..dim)
                    .flat_map(|a| [unit(a, 1), unit(a, -1)])
                    .map(|u| position[rep_of[grid.shifted(idx, &u)]])
                    .filter(|&p| p != own)
                    .collect()
            })
            .collect();
        Self { rep_of, reps, position, parent, neighbours }
    }
}

/// Largest `‖U(x) − U(x + e_a/N_a)‖_F` over nodes and axes, where `U` holds
/// the polyphase rows `h_j(x − w_i)` of the given filters.
fn max_row_jump(grid: &Grid, shifts: &[Vec<i64>], rows: &[Vec<Complex64>]) -> (f64, usize) {
    let backs: Vec<Vec<i64>> = shifts.iter().map(|s| s.iter().map(|x| -x).collect()).collect();
    let mut best = (0.0_f64, 0);
    for idx in 0..grid.len() {
        for axis in 0..grid.dim() {
            let next = grid.step(idx, axis);
            let mut sq = 0.0;
            for b in &backs {
                let (u, v) = (grid.shifted(idx, b), grid.shifted(next, b));
                for r in rows {
                    sq += (r[u] - r[v]).norm_sqr();
                }
            }
            let jump = sq.sqrt();
            if jump > best.0 {
                best = (jump, idx);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_dilation;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn haar_sweep_closes() {
        let a = validate_dilation(&[vec![2]]).unwrap();
        let h0 = TorusFunction::from_coeffs(1, [(vec![0], c(0.5)), (vec![1], c(0.5))]).unwrap();
        let grid = Grid::new(vec![64]).unwrap();
        let out = align_sweep(&h0, &a, &grid, &SweepOptions::default()).unwrap();
        assert!(out.is_closed(), "{:?}", out.report);
        assert!(out.gram_residual < 1e-12);
        assert!(out.covariance_residual < 1e-12);
    }

    #[test]
    fn constant_row_gives_character_completion() {
        let a = validate_dilation(&[vec![3]]).unwrap();
        let h0 = TorusFunction::constant(1, c(3f64.sqrt().recip()));
        let grid = Grid::new(vec![96]).unwrap();
        let out = align_sweep(&h0, &a, &grid, &SweepOptions::default()).unwrap();
        assert!(out.is_closed(), "{:?}", out.report);
        assert!(out.gram_residual < 1e-12);
    }

    #[test]
    fn both_orders_agree_on_closure() {
        let a = validate_dilation(&[vec![1, 1], vec![1, -1]]).unwrap();
        let h0 = TorusFunction::from_coeffs(2, [(vec![0, 0], c(0.5)), (vec![1, 0], c(0.5))]).unwrap();
        let grid = Grid::new(vec![16, 16]).unwrap();
        for order in [SweepOrder::Lexicographic, SweepOrder::ReverseLexicographic] {
            let opts = SweepOptions { order, ..SweepOptions::default() };
            let out = align_sweep(&h0, &a, &grid, &opts).unwrap();
            assert!(out.covariance_residual < 1e-12);
            assert!(out.gram_residual < 1e-12);
            assert_eq!(out.report.sweep, order.name());
        }
    }
}
