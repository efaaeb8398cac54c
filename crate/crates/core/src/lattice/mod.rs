//! Integer dilation matrices and the finite groups they determine.
//!
//! For an expanding integer matrix `A` with `q = |det A|`, the quotient
//! `Zⁿ/AZⁿ` has `q` elements and its dual is the subgroup
//! `F = {w ∈ Tⁿ : Aᵀw ∈ Zⁿ}`. Coset representatives index the standard
//! character basis of `C(Tⁿ)` over the `F`-invariant subalgebra; the elements
//! of `F` label the columns of polyphase matrices.

mod int_matrix;
mod normal_form;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_rational::Ratio;
use std::f64::consts::TAU;

pub use int_matrix::IntMatrix;
pub use normal_form::{column_hermite_form, reduce_mod_hermite, smith_normal_form, SmithDecomposition};

use crate::{Complex64, Error, Result};

pub type Rational = Ratio<i64>;

/// Default slack for the expansiveness check.
pub const EIGENVALUE_EPS: f64 = 1e-9;

/// A validated expanding integer matrix.
#[derive(Clone, Debug)]
pub struct DilationMatrix {
    entries: IntMatrix,
    transpose: IntMatrix,
    hermite: IntMatrix,
    det: i64,
    q: u64,
}

impl PartialEq for DilationMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl DilationMatrix {
    pub fn new(entries: IntMatrix) -> Result<Self> {
        Self::with_eps(entries, EIGENVALUE_EPS)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows)
            .ok_or_else(|| Error::Parse("matrix rows have different lengths".into()))?;
        Self::new(m)
    }

    pub fn with_eps(entries: IntMatrix, eps: f64) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::NotSquare { rows: entries.nrows(), cols: entries.ncols() });
        }
        let det = entries.determinant();
        if det == 0 {
            return Err(Error::Singular);
        }
        let n = entries.nrows();
        let real = DMatrix::from_fn(n, n, |i, j| entries[(i, j)] as f64);
        let min_modulus = real
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        if min_modulus <= 1.0 + eps {
            return Err(Error::NotExpanding { modulus: min_modulus, eps });
        }
        Ok(Self {
            transpose: entries.transpose(),
            hermite: column_hermite_form(&entries),
            entries,
            det,
            q: det.unsigned_abs(),
        })
    }

    /// The five-dimensional dilation `[[0, 3], [I₄, 0]]` with determinant 3.
    pub fn det3_on_z5() -> Self {
        let mut m = IntMatrix::zeros(5, 5);
        m[(0, 4)] = 3;
        for i in 1..5 {
            m[(i, i - 1)] = 1;
        }
        Self::new(m).expect("det-3 dilation on Z^5 is expanding")
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    /// `B = Aᵀ`, the matrix acting on frequencies.
    pub fn transpose(&self) -> &IntMatrix {
        &self.transpose
    }

    /// Upper triangular Hermite basis of the lattice `AZⁿ`.
    pub fn hermite(&self) -> &IntMatrix {
        &self.hermite
    }

    pub fn in_lattice(&self, k: &[i64]) -> bool {
        reduce_mod_hermite(&self.hermite, k).iter().all(|&x| x == 0)
    }

    /// Canonical representative of `k + AZⁿ` inside the Hermite box.
    pub fn reduce(&self, k: &[i64]) -> Vec<i64> {
        reduce_mod_hermite(&self.hermite, k)
    }

    pub fn coset_representatives(&self) -> CosetReps {
        coset_representatives(self)
    }

    pub fn dual_group(&self) -> DualGroup {
        dual_group(self)
    }
}

/// Checks an integer matrix and wraps it as a [`DilationMatrix`].
pub fn validate_dilation(rows: &[Vec<i64>]) -> Result<DilationMatrix> {
    DilationMatrix::from_rows(rows)
}

/// One representative per coset of `AZⁿ` in `Zⁿ`, zero first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    reps: Vec<Vec<i64>>,
}

impl CosetReps {
    pub fn as_slice(&self) -> &[Vec<i64>] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.reps.iter()
    }
}

/// Enumerates the box `∏[0, dᵢ)` of the Smith form of `A`, maps each point
/// back through `U`, and reduces it into the Hermite box. The reduced points
/// are sorted lexicographically, so the zero vector comes first.
pub fn coset_representatives(a: &DilationMatrix) -> CosetReps {
    let snf = smith_normal_form(a.entries());
    let diag = snf.diagonal();
    let mut reps: Vec<Vec<i64>> = box_points(&diag)
        .map(|y| a.reduce(&snf.u.mul_vec(&y)))
        .collect();
    reps.sort();
    reps.dedup();
    debug_assert_eq!(reps.len() as u64, a.q());
    CosetReps { reps }
}

fn box_points(extents: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: i64 = extents.iter().product();
    (0..total).map(move |mut idx| {
        let mut p = vec![0; extents.len()];
        for (slot, &e) in p.iter_mut().zip(extents).rev() {
            *slot = idx % e;
            idx /= e;
        }
        p
    })
}

/// The finite subgroup `F = {w ∈ [0,1)ⁿ : Aᵀw ∈ Zⁿ}`, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGroup {
    elements: Vec<Vec<Rational>>,
}

impl DualGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements.first().map_or(0, Vec::len)
    }

    pub fn elements(&self) -> &[Vec<Rational>] {
        &self.elements
    }

    pub fn element_f64(&self, i: usize) -> Vec<f64> {
        self.elements[i].iter().map(to_f64).collect()
    }

    /// Index of `(wᵢ + w_j) mod 1`.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        let sum: Vec<Rational> = self.elements[i]
            .iter()
            .zip(&self.elements[j])
            .map(|(a, b)| frac(a + b))
            .collect();
        self.index_of(&sum).expect("dual group is closed under addition")
    }

    pub fn index_of(&self, w: &[Rational]) -> Option<usize> {
        let reduced: Vec<Rational> = w.iter().copied().map(frac).collect();
        self.elements.iter().position(|e| *e == reduced)
    }

    /// Least common multiple of the denominators along each axis.
    pub fn axis_denominators(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|axis| self.elements.iter().fold(1i64, |acc, w| acc.lcm(w[axis].denom())))
            .collect()
    }

    /// `C[j][i] = exp(2πi p_j·w_i)`; `C/√q` is unitary.
    pub fn character_table(&self, reps: &CosetReps) -> DMatrix<Complex64> {
        let q = self.len();
        DMatrix::from_fn(reps.len(), q, |j, i| {
            let phase: f64 = reps.as_slice()[j]
                .iter()
                .zip(&self.elements[i])
                .map(|(&p, w)| to_f64(&(w * p)))
                .sum();
            Complex64::from_polar(1.0, TAU * phase)
        })
    }
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn frac(r: Rational) -> Rational {
    r - r.floor()
}

/// Solves `Aᵀw ∈ Zⁿ` through the Smith form of `Aᵀ = U D V`: the solutions
/// are `w = V⁻¹ D⁻¹ y` for integer `y`, and `y` ranges over `∏[0, dᵢ)` mod 1.
pub fn dual_group(a: &DilationMatrix) -> DualGroup {
    let snf = smith_normal_form(a.transpose());
    let diag = snf.diagonal();
    let n = a.dim();
    let mut elements: Vec<Vec<Rational>> = box_points(&diag)
        .map(|y| {
            (0..n)
                .map(|i| {
                    let s: Rational = (0..n)
                        .map(|k| Rational::new(snf.v_inv[(i, k)] * y[k], diag[k]))
                        .sum();
                    frac(s)
                })
                .collect()
        })
        .collect();
    elements.sort();
    elements.dedup();
    debug_assert_eq!(elements.len() as u64, a.q());
    DualGroup { elements }
}
