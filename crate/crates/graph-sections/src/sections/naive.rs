//! Textbook Gauss-Jordan elimination with per-pivot division.
//!
//! This is the independent reference route kept alongside the
//! fraction-free primary: same contracts, different arithmetic path.
//! Tests and the acceptance suite assert bit-identical results from
//! both. Nothing here is shared with `elim` beyond the matrix
//! container.

use crate::scalar::Scalar;

use super::elim::Dense;
use super::{ensure_exact, SectionError, SectionMatrix};

struct Reduced<S> {
    matrix: Dense<S>,
    pivots: Vec<(usize, usize)>,
    /// Product of pivot values before normalization, with swap sign.
    det_factor: S,
}

/// Gauss-Jordan: scale each pivot row to 1, clear its column above and
/// below.
fn reduce<S: Scalar>(mut m: Dense<S>, elim_cols: usize) -> Reduced<S> {
    let mut pivots = Vec::new();
    let mut det_factor = S::one();
    let mut row = 0;
    for col in 0..elim_cols {
        if row == m.rows {
            break;
        }
        let pivot_row = match (row..m.rows).find(|&i| !m.at(i, col).is_zero()) {
            Some(i) => i,
            None => continue,
        };
        if pivot_row != row {
            for j in 0..m.cols {
                let a = m.at(pivot_row, j).clone();
                let b = m.at(row, j).clone();
                m.set(pivot_row, j, b);
                m.set(row, j, a);
            }
            det_factor = det_factor.neg();
        }
        let pivot = m.at(row, col).clone();
        det_factor = det_factor.mul(&pivot);
        for j in col..m.cols {
            let scaled = m.at(row, j).div(&pivot).expect("pivot is nonzero");
            m.set(row, j, scaled);
        }
        for i in 0..m.rows {
            if i == row || m.at(i, col).is_zero() {
                continue;
            }
            let factor = m.at(i, col).clone();
            for j in col..m.cols {
                let value = m.at(i, j).sub(&factor.mul(m.at(row, j)));
                m.set(i, j, value);
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    Reduced {
        matrix: m,
        pivots,
        det_factor,
    }
}

pub(crate) fn determinant_dense<S: Scalar>(m: &Dense<S>) -> S {
    assert_eq!(m.rows, m.cols, "determinant needs a square matrix");
    if m.rows == 0 {
        return S::one();
    }
    let red = reduce(m.clone(), m.cols);
    if red.pivots.len() < m.rows {
        S::zero()
    } else {
        red.det_factor
    }
}

pub(crate) fn rank_dense<S: Scalar>(m: &Dense<S>) -> usize {
    reduce(m.clone(), m.cols).pivots.len()
}

pub(crate) fn solve_dense<S: Scalar>(m: &Dense<S>, rhs: &[S]) -> Option<Vec<S>> {
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
    let red = reduce(augmented, n);
    if red.pivots.len() < n {
        return None;
    }
    // reduced form is the identity; the solution sits in the last column
    Some((0..n).map(|i| red.matrix.at(i, n).clone()).collect())
}

/// Reference determinant of a section.
pub fn determinant<S: Scalar>(m: &SectionMatrix<S>) -> Result<S, SectionError> {
    ensure_exact::<S>("naive determinant")?;
    Ok(determinant_dense(m.dense()))
}

/// Reference rank of a section.
pub fn rank<S: Scalar>(m: &SectionMatrix<S>) -> Result<usize, SectionError> {
    ensure_exact::<S>("naive rank")?;
    Ok(rank_dense(m.dense()))
}

/// Reference solve against a window right-hand side given in
/// enumeration order; `None` when the section is singular.
pub fn solve<S: Scalar>(m: &SectionMatrix<S>, rhs: &[S]) -> Result<Option<Vec<S>>, SectionError> {
    ensure_exact::<S>("naive solve")?;
    Ok(solve_dense(m.dense(), rhs))
}
