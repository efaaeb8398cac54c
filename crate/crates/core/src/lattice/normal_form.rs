//! Smith and Hermite normal forms of integer matrices.

use super::IntMatrix;

/// `M = U · D · V` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries `d₀ | d₁ | …`. The inverses of both transforms are
/// carried along so that lattice coordinates can be mapped both ways without
/// a rational inverse.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)]).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // Each elementary operation E applied to D is mirrored so that M = U·D·V
    // stays true: row op D ← E·D means U ← U·E⁻¹, column op D ← D·E means
    // V ← E⁻¹·V.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, k| {
        d.add_row_multiple(dst, src, k);
        u.add_col_multiple(src, dst, -k);
        ui.add_row_multiple(dst, src, k);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, k| {
        d.add_col_multiple(dst, src, k);
        v.add_row_multiple(src, dst, -k);
        vi.add_col_multiple(dst, src, k);
    };

    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d[(i, j)].abs();
                    if x != 0 && pivot.map_or(true, |(pi, pj)| x < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_cols(t, pi);
            u_inv.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_rows(t, pj);
            v_inv.swap_cols(t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..r {
                let k = d[(i, t)].div_euclid(p);
                if k != 0 {
                    row_add(&mut d, &mut u, &mut u_inv, i, t, -k);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..c {
                let k = d[(t, j)].div_euclid(p);
                if k != 0 {
                    col_add(&mut d, &mut v, &mut v_inv, j, t, -k);
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, 1),
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_col(t);
            u_inv.negate_row(t);
        }
    }

    SmithDecomposition { u, u_inv, d, v, v_inv }
}

/// Upper-triangular column Hermite form `H = M·W` (`W` unimodular) of a
/// non-singular square matrix: `H` spans the same lattice as the columns of
/// `M`, has a positive diagonal, and `0 ≤ H[i][j] < H[i][i]` for `j > i`.
pub fn column_hermite_form(m: &IntMatrix) -> IntMatrix {
    assert!(m.is_square());
    let n = m.nrows();
    let mut h = m.clone();
    for i in (0..n).rev() {
        // Euclid across columns 0..=i on row i.
        loop {
            let mut best: Option<usize> = None;
            for j in 0..=i {
                let x = h[(i, j)].abs();
                if x != 0 && best.map_or(true, |b| x < h[(i, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else {
                panic!("column_hermite_form: singular matrix");
            };
            let p = h[(i, b)];
            let mut done = true;
            for j in 0..=i {
                if j != b {
                    let k = h[(i, j)].div_euclid(p);
                    if k != 0 {
                        h.add_col_multiple(j, b, -k);
                    }
                    done &= h[(i, j)] == 0;
                }
            }
            if done {
                h.swap_cols(b, i);
                break;
            }
        }
        if h[(i, i)] < 0 {
            h.negate_col(i);
        }
        for j in i + 1..n {
            let k = h[(i, j)].div_euclid(h[(i, i)]);
            if k != 0 {
                h.add_col_multiple(j, i, -k);
            }
        }
    }
    h
}

/// Reduces `x` modulo the lattice spanned by the columns of an upper
/// triangular Hermite form. The result satisfies `0 ≤ x_i < H[i][i]`.
pub fn reduce_mod_hermite(h: &IntMatrix, x: &[i64]) -> Vec<i64> {
    let mut x = x.to_vec();
    for i in (0..h.nrows()).rev() {
        let k = x[i].div_euclid(h[(i, i)]);
        if k != 0 {
            for (r, xr) in x.iter_mut().enumerate().take(i + 1) {
                *xr -= k * h[(r, i)];
            }
        }
    }
    x
}
