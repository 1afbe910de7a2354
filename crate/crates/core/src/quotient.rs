//! Equitable quotient of a threshold graph over its run partition.
//!
//! The maximal runs of the creation string split the vertices into `2k`
//! cells `C_1 = V_{s_1}, C_2 = V_{t_1}, .., C_{2k} = V_{t_k}` (odd cells are
//! isolated runs, even cells dominating runs). Every vertex of `C_i` has the
//! same number of neighbours inside `C_j`, so the partition is equitable and
//! the whole spectrum of the n-by-n normalized adjacency splits into the
//! spectrum of a 2k-by-2k quotient plus closed-form leftovers.

use crate::exact::{rat, Rational, RationalMatrix};
use crate::threshold::BlockForm;
use num::{One, Zero};

/// The quotient data of one threshold graph.
#[derive(Debug, Clone)]
pub struct QuotientSystem {
    /// Inclusive 1-based vertex ranges of the cells, in string order.
    pub cells: Vec<(usize, usize)>,
    /// Cell sizes `|C_i|` (the diagonal of `C`).
    pub sizes: Vec<usize>,
    /// Integer quotient `B`: entry `(i, j)` counts the neighbours a vertex
    /// of `C_i` has inside `C_j`.
    pub b_pi: Vec<Vec<usize>>,
    /// Diagonal of `D`: the common vertex degree `d(C_i)` of each cell,
    /// which is also the i-th row sum of `B`.
    pub d_pi: Vec<usize>,
    /// Row-normalized quotient `D^{-1} B`, row-stochastic; its eigenvalues
    /// are simple and form the "quotient half" of the full spectrum.
    pub cal_b_pi: RationalMatrix,
    /// Cell adjacency pattern `A = B C^{-1}`: off the diagonal it is the 0/1
    /// indicator "all edges between the cells present", on the diagonal
    /// `1 - 1/t_i` marks the clique cells.
    pub a_pi: Vec<Vec<Rational>>,
    /// Diagonal of `X = C D^{-1}`: the ratios `r_i = |C_i| / d(C_i)`.
    pub x_diag: Vec<Rational>,
    /// The clique-cell diagonal values `beta_i = 1 - 1/t_i`, one per block.
    pub beta: Vec<Rational>,
}

/// Builds the quotient from the block form. All entries follow one rule:
/// a vertex sees all of a cell `C_j` iff the later of the two cells is a
/// dominating run, because a dominating vertex is adjacent to everything
/// inserted before it. Hence for `i != j` the count is `|C_j|` when
/// `max(i, j)` is even and 0 otherwise, and on the diagonal the clique
/// cells contribute `|C_i| - 1`.
pub fn build_quotient(bf: &BlockForm) -> QuotientSystem {
    let k2 = 2 * bf.k();
    let sizes = bf.cell_sizes();
    let d_pi = bf.cell_degrees();

    let mut cells = Vec::with_capacity(k2);
    let mut start = 1usize;
    for &size in &sizes {
        cells.push((start, start + size - 1));
        start += size;
    }

    let mut b_pi = vec![vec![0usize; k2]; k2];
    let mut a_pi = vec![vec![Rational::zero(); k2]; k2];
    for i in 1..=k2 {
        for j in 1..=k2 {
            if i != j && i.max(j) % 2 == 0 {
                b_pi[i - 1][j - 1] = sizes[j - 1];
                a_pi[i - 1][j - 1] = Rational::one();
            } else if i == j && i % 2 == 0 {
                b_pi[i - 1][j - 1] = sizes[i - 1] - 1;
                a_pi[i - 1][j - 1] = rat((sizes[i - 1] - 1) as i64, sizes[i - 1] as i64);
            }
        }
    }

    let mut cal_b_pi = RationalMatrix::zeros(k2, k2);
    for i in 0..k2 {
        for j in 0..k2 {
            if b_pi[i][j] != 0 {
                *cal_b_pi.get_mut(i, j) = rat(b_pi[i][j] as i64, d_pi[i] as i64);
            }
        }
    }

    let x_diag = (0..k2).map(|i| rat(sizes[i] as i64, d_pi[i] as i64)).collect();
    let beta = bf
        .t_blocks
        .iter()
        .map(|&ti| rat((ti - 1) as i64, ti as i64))
        .collect();

    QuotientSystem {
        cells,
        sizes,
        b_pi,
        d_pi,
        cal_b_pi,
        a_pi,
        x_diag,
        beta,
    }
}

/// The n-by-2k cell indicator matrix `P` (vertex `v` row has a single 1 in
/// its cell's column, so `P^T P` is the diagonal of cell sizes). The
/// partition being equitable is exactly the exact intertwining
/// `(D^{-1} A) P = P (D^{-1} B)`.
pub fn characteristic_matrix(qs: &QuotientSystem, n: usize) -> RationalMatrix {
    let mut p = RationalMatrix::zeros(n, qs.sizes.len());
    for (c, &(lo, hi)) in qs.cells.iter().enumerate() {
        for v in lo..=hi {
            *p.get_mut(v - 1, c) = Rational::one();
        }
    }
    p
}

/// Symmetric matrix `X^{1/2} A X^{1/2}` similar to the row-normalized
/// quotient: conjugating `D^{-1} B` by `(C D)^{-1/2}` lands on it. Used to
/// hand the quotient to the symmetric eigensolver; the off-diagonal entries
/// are `sqrt(r_i r_j)` on the cell adjacency pattern and the diagonal stays
/// rational (`r_i (1 - 1/t_i)` on clique cells).
pub fn symmetrized_quotient(qs: &QuotientSystem) -> Vec<Vec<f64>> {
    let m = qs.sizes.len();
    let r: Vec<f64> = qs
        .x_diag
        .iter()
        .map(|x| num::ToPrimitive::to_f64(x).unwrap())
        .collect();
    let mut out = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        for j in i..m {
            let a_ij = num::ToPrimitive::to_f64(&qs.a_pi[i][j]).unwrap();
            let entry = if i == j {
                r[i] * a_ij
            } else {
                (r[i] * r[j]).sqrt() * a_ij
            };
            out[i][j] = entry;
            out[j][i] = entry;
        }
    }
    out
}

/// Entrywise squares of [`symmetrized_quotient`], computed exactly. All
/// entries of the symmetric form are non-negative, so the squared matrix
/// determines it; exact identities about the symmetrization are checked
/// against this.
pub fn symmetrized_quotient_squared(qs: &QuotientSystem) -> RationalMatrix {
    let m = qs.sizes.len();
    let mut out = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let a2 = &qs.a_pi[i][j] * &qs.a_pi[i][j];
            *out.get_mut(i, j) = if i == j {
                let r2 = &qs.x_diag[i] * &qs.x_diag[i];
                r2 * a2
            } else {
                &qs.x_diag[i] * &qs.x_diag[j] * a2
            };
        }
    }
    out
}

/// Row sums of the integer quotient, as a diagonal check: they must equal
/// the cell degrees.
pub fn quotient_row_sums(qs: &QuotientSystem) -> Vec<usize> {
    qs.b_pi.iter().map(|row| row.iter().sum()).collect()
}
