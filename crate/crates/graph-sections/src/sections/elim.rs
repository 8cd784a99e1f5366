//! Fraction-free (Bareiss-style) elimination over an exact scalar
//! field: determinant, rank, kernel, and linear solves.
//!
//! The one-step update `m[i][j] <- (m[i][j]*pivot - m[i][c]*m[r][j]) / prev`
//! keeps every intermediate entry equal to a quotient of minors of the
//! input, which is what controls coefficient blow-up for rational
//! entries. Every division is exact. Pivoting takes the first nonzero
//! in column order, so runs are deterministic.

use crate::scalar::Scalar;

/// Dense row-major matrix used by both elimination routes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Dense<S> {
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Dense { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Dense::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Matrix-vector product, exact.
    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut sum = S::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !x[j].is_zero() {
                        sum = sum.add(&a.mul(&x[j]));
                    }
                }
                sum
            })
            .collect()
    }
}

/// Result of a fraction-free forward elimination.
pub struct Echelon<S> {
    pub matrix: Dense<S>,
    /// (row, column) of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// Sign flip parity from row swaps.
    pub negated: bool,
    /// False when some column had to be skipped (rank-deficient square
    /// matrices); the Bareiss determinant identity then no longer
    /// applies, but ranks and solution sets are untouched (all row
    /// operations are invertible).
    pub full_column_run: bool,
}

/// Forward elimination on the first `elim_cols` columns; trailing
/// columns (right-hand sides) are carried along.
pub fn eliminate<S: Scalar>(mut m: Dense<S>, elim_cols: usize) -> Echelon<S> {
    assert!(elim_cols <= m.cols);
    let mut pivots = Vec::new();
    let mut negated = false;
    let mut full_column_run = true;
    let mut prev = S::one();
    let mut row = 0;
    for col in 0..elim_cols {
        if row == m.rows {
            break;
        }
        let pivot_row = (row..m.rows).find(|&i| !m.at(i, col).is_zero());
        let pivot_row = match pivot_row {
            Some(i) => i,
            None => {
                full_column_run = false;
                continue;
            }
        };
        if pivot_row != row {
            m.swap_rows(pivot_row, row);
            negated = !negated;
        }
        let pivot = m.at(row, col).clone();
        for i in row + 1..m.rows {
            let factor = m.at(i, col).clone();
            for j in col + 1..m.cols {
                let value = m.at(i, j).mul(&pivot).sub(&factor.mul(m.at(row, j)));
                let value = value
                    .div(&prev)
                    .expect("previous pivot is nonzero by construction");
                m.set(i, j, value);
            }
            m.set(i, col, S::zero());
        }
        pivots.push((row, col));
        prev = pivot;
        row += 1;
    }
    Echelon {
        matrix: m,
        pivots,
        negated,
        full_column_run,
    }
}

/// Exact determinant of a square matrix.
pub fn determinant<S: Scalar>(m: &Dense<S>) -> S {
    assert_eq!(m.rows, m.cols, "determinant needs a square matrix");
    if m.rows == 0 {
        return S::one();
    }
    let ech = eliminate(m.clone(), m.cols);
    if ech.pivots.len() < m.rows || !ech.full_column_run {
        return S::zero();
    }
    // Bareiss invariant: after a full run the last pivot is the
    // determinant up to the swap sign.
    let (r, c) = ech.pivots[ech.pivots.len() - 1];
    let det = ech.matrix.at(r, c).clone();
    if ech.negated {
        det.neg()
    } else {
        det
    }
}

/// Exact rank.
pub fn rank<S: Scalar>(m: &Dense<S>) -> usize {
    eliminate(m.clone(), m.cols).pivots.len()
}

/// Basis of the null space, one vector per free column. Every basis
/// vector is re-verified by exact multiplication before it is
/// returned.
pub fn kernel_basis<S: Scalar>(m: &Dense<S>) -> Vec<Vec<S>> {
    let ech = eliminate(m.clone(), m.cols);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![S::zero(); m.cols];
        x[free] = S::one();
        // back-substitute pivots above the free column
        for &(r, c) in ech.pivots.iter().rev() {
            if c >= free {
                continue;
            }
            let mut sum = S::zero();
            for j in c + 1..m.cols {
                if !x[j].is_zero() {
                    sum = sum.add(&ech.matrix.at(r, j).mul(&x[j]));
                }
            }
            x[c] = sum
                .neg()
                .div(ech.matrix.at(r, c))
                .expect("pivot entries are nonzero");
        }
        let residual = m.mul_vec(&x);
        assert!(
            residual.iter().all(|s| s.is_zero()),
            "kernel vector failed the exact re-check"
        );
        basis.push(x);
    }
    basis
}

/// Exact solution of a square nonsingular system; `None` when the
/// matrix is singular.
pub fn solve<S: Scalar>(m: &Dense<S>, rhs: &[S]) -> Option<Vec<S>> {
    assert_eq!(m.rows, m.cols);
    assert_eq!(rhs.len(), m.rows);
    let n = m.rows;
    let augmented = Dense::from_fn(n, n + 1, |i, j| {
        if j < n {
            m.at(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let ech = eliminate(augmented, n);
    if ech.pivots.len() < n {
        return None;
    }
    let a = &ech.matrix;
    let mut x = vec![S::zero(); n];
    for &(r, c) in ech.pivots.iter().rev() {
        let mut sum = a.at(r, n).clone();
        for j in c + 1..n {
            if !x[j].is_zero() {
                sum = sum.sub(&a.at(r, j).mul(&x[j]));
            }
        }
        x[c] = sum.div(a.at(r, c)).expect("pivot entries are nonzero");
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num::BigRational;

    type Rat = BigRational;

    fn dense(rows: &[&[(i64, i64)]]) -> Dense<Rat> {
        Dense::from_fn(rows.len(), rows[0].len(), |i, j| {
            let (n, d) = rows[i][j];
            ratio::<Rat>(n, d)
        })
    }

    #[test]
    fn determinant_of_small_matrices() {
        let m = dense(&[&[(1, 1), (2, 1)], &[(3, 1), (4, 1)]]);
        assert_eq!(determinant(&m), ratio::<Rat>(-2, 1));
        let singular = dense(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert_eq!(determinant(&singular), ratio::<Rat>(0, 1));
        let empty: Dense<Rat> = Dense::zero(0, 0);
        assert_eq!(determinant(&empty), ratio::<Rat>(1, 1));
    }

    #[test]
    fn rank_and_kernel() {
        let m = dense(&[
            &[(1, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1)],
            &[(2, 1), (2, 1), (0, 1)],
        ]);
        assert_eq!(rank(&m), 1);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            assert!(m.mul_vec(x).iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn solve_small_system() {
        let m = dense(&[&[(2, 1), (1, 1)], &[(1, 1), (3, 1)]]);
        let rhs = vec![ratio::<Rat>(5, 1), ratio::<Rat>(10, 1)];
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
        let singular = dense(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        assert!(solve(&singular, &rhs).is_none());
    }
}
