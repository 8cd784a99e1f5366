//! Truncated section matrices and exact injectivity decisions.
//!
//! `build_section` materializes the k-by-k matrix of an operator
//! between the span of the first k enumerated coordinates and itself:
//! entry (i, j) is the coefficient of row `v_i` at `v_j`, columns
//! beyond the window dropped. `build_rows_matrix` keeps those columns:
//! its rows are the untruncated row functionals, so the section is a
//! literal prefix of it, and full row rank is exactly linear
//! independence of the first k row functionals.
//!
//! Determinant, rank, and kernel run fraction-free over the exact
//! scalar modes; [`naive`] carries the independent reference route.
//! Float mode supports only the `|det| > eps` injectivity heuristic.
//!
//! A window seminorm `p_k(f)` (the sum of the first k coordinate
//! magnitudes) is included: row functionals bounded by `p_k` are
//! precisely those supported in the first k coordinates, a
//! finite-dimensional space, which is why rank checks on windows are
//! the whole computation.

pub(crate) mod elim;
pub mod naive;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Enumeration, VertexKey};
use crate::operator::{support_in_window, FunctionOnV, Operator, OperatorError};
use crate::scalar::{float_epsilon, Scalar};

use elim::Dense;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SectionError {
    #[error("enumeration has {have} vertices, section needs {need}")]
    EnumerationTooShort { have: usize, need: usize },
    #[error("{operation} requires an exact scalar mode")]
    FloatModeUnsupported { operation: &'static str },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

pub(crate) fn ensure_exact<S: Scalar>(operation: &'static str) -> Result<(), SectionError> {
    if S::exact() {
        Ok(())
    } else {
        Err(SectionError::FloatModeUnsupported { operation })
    }
}

/// The k-by-k truncated section of an operator under an enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionMatrix<S: Scalar> {
    k: usize,
    enumeration: Enumeration,
    entries: Dense<S>,
}

impl<S: Scalar> SectionMatrix<S> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    /// Entry at 1-based (row, column).
    pub fn entry(&self, i: usize, j: usize) -> &S {
        self.entries.at(i - 1, j - 1)
    }

    pub(crate) fn dense(&self) -> &Dense<S> {
        &self.entries
    }

    /// Exact determinant, fraction-free.
    pub fn determinant(&self) -> Result<S, SectionError> {
        ensure_exact::<S>("determinant")?;
        Ok(elim::determinant(&self.entries))
    }

    /// Exact rank, fraction-free with column pivoting.
    pub fn rank(&self) -> Result<usize, SectionError> {
        ensure_exact::<S>("rank")?;
        Ok(elim::rank(&self.entries))
    }

    /// True iff the section is injective (rank k). Exact modes only;
    /// float mode has [`SectionMatrix::is_injective_heuristic`].
    pub fn is_injective(&self) -> Result<bool, SectionError> {
        Ok(self.rank()? == self.k)
    }

    /// Exact basis of the null space; empty iff injective.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<S>>, SectionError> {
        ensure_exact::<S>("kernel_basis")?;
        Ok(elim::kernel_basis(&self.entries))
    }
}

impl SectionMatrix<f64> {
    /// Float-mode injectivity heuristic: `|det| > eps` by partially
    /// pivoted LU. Reports carrying this verdict must label it
    /// heuristic; it certifies nothing.
    pub fn is_injective_heuristic(&self) -> (bool, f64) {
        let n = self.k;
        let mut a: Vec<f64> = (0..n * n)
            .map(|idx| *self.entries.at(idx / n, idx % n))
            .collect();
        let mut det = 1.0f64;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a[p * n + col]
                        .abs()
                        .partial_cmp(&a[q * n + col].abs())
                        .unwrap()
                })
                .unwrap();
            let pivot = a[pivot_row * n + col];
            if pivot == 0.0 {
                return (false, 0.0);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            det *= pivot;
            for i in col + 1..n {
                let factor = a[i * n + col] / pivot;
                for j in col..n {
                    a[i * n + j] -= factor * a[col * n + j];
                }
            }
        }
        (det.abs() > float_epsilon(), det)
    }
}

/// The first k row functionals, untruncated: window columns first (in
/// enumeration order), then out-of-window support vertices in
/// ascending key order.
#[derive(Debug, Clone, PartialEq)]
pub struct RowsMatrix<S: Scalar> {
    k: usize,
    window: Vec<VertexKey>,
    outside: Vec<VertexKey>,
    entries: Dense<S>,
}

impl<S: Scalar> RowsMatrix<S> {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Total number of columns, `k` plus the out-of-window support.
    pub fn width(&self) -> usize {
        self.k + self.outside.len()
    }

    pub fn window_columns(&self) -> &[VertexKey] {
        &self.window
    }

    pub fn outside_columns(&self) -> &[VertexKey] {
        &self.outside
    }

    /// Entry at 1-based (row, column), columns spanning the window
    /// then the outside block.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        self.entries.at(i - 1, j - 1)
    }

    pub fn rank(&self) -> Result<usize, SectionError> {
        ensure_exact::<S>("rank")?;
        Ok(elim::rank(&self.entries))
    }
}

fn check_window<S: Scalar>(e: &Enumeration, k: usize) -> Result<(), SectionError> {
    assert!(k >= 1, "sections need k >= 1");
    if e.len() < k {
        return Err(SectionError::EnumerationTooShort {
            have: e.len(),
            need: k,
        });
    }
    Ok(())
}

/// Builds the truncated k-section. Deterministic: identical
/// (operator, enumeration, k) give bit-identical entries.
pub fn build_section<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    k: usize,
) -> Result<SectionMatrix<S>, SectionError> {
    check_window::<S>(e, k)?;
    let mut rows = Vec::with_capacity(k);
    for i in 1..=k {
        rows.push(op.row(e.vertex(i))?);
    }
    let entries = Dense::from_fn(k, k, |i, j| rows[i].coeff(e.vertex(j + 1)));
    Ok(SectionMatrix {
        k,
        enumeration: e.clone(),
        entries,
    })
}

/// Builds the untruncated rows matrix for rows 1..=k.
pub fn build_rows_matrix<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    k: usize,
) -> Result<RowsMatrix<S>, SectionError> {
    check_window::<S>(e, k)?;
    let mut rows = Vec::with_capacity(k);
    let mut outside_set: BTreeSet<VertexKey> = BTreeSet::new();
    for i in 1..=k {
        let row = op.row(e.vertex(i))?;
        for (w, _) in row.support() {
            match e.position_of(w) {
                Some(pos) if pos <= k => {}
                _ => {
                    outside_set.insert(w.clone());
                }
            }
        }
        rows.push(row);
    }
    let window: Vec<VertexKey> = e.order()[..k].to_vec();
    let outside: Vec<VertexKey> = outside_set.into_iter().collect();
    let entries = Dense::from_fn(k, k + outside.len(), |i, j| {
        let column = if j < k { &window[j] } else { &outside[j - k] };
        rows[i].coeff(column)
    });
    Ok(RowsMatrix {
        k,
        window,
        outside,
        entries,
    })
}

/// Fraction-free solve of `section * x = rhs` (window coordinates in
/// enumeration order); `None` when the section is singular.
pub(crate) fn solve_dense_fraction_free<S: Scalar>(
    m: &SectionMatrix<S>,
    rhs: &[S],
) -> Option<Vec<S>> {
    elim::solve(m.dense(), rhs)
}

/// Linear independence of the first k row functionals: full row rank
/// of the untruncated rows matrix.
pub fn rows_independent<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    k: usize,
) -> Result<bool, SectionError> {
    ensure_exact::<S>("rows_independent")?;
    Ok(build_rows_matrix(op, e, k)?.rank()? == k)
}

/// Window seminorm `p_k(f)`: the sum of the magnitudes of the first k
/// coordinates. Monotone in k; zero iff `f` vanishes on the window.
pub fn seminorm<S: Scalar>(f: &FunctionOnV<S>, e: &Enumeration, k: usize) -> S::Magnitude {
    assert!(k >= 1, "seminorms are indexed from 1");
    let mut total = S::zero_magnitude();
    for j in 1..=k.min(e.len()) {
        let value = f.value(e.vertex(j));
        total = S::add_magnitudes(&total, &value.magnitude());
    }
    total
}

/// The 1-based positions whose entries may be nonzero in row `i` of a
/// k-section (sparsity audit helper).
pub fn section_support<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    k: usize,
    i: usize,
) -> Result<crate::operator::SupportIndices, SectionError> {
    check_window::<S>(e, k)?;
    Ok(support_in_window(op, e, i, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LocallyFiniteGraph;
    use crate::operator::{adjacency, custom_operator, laplacian};
    use crate::scalar::{ratio, GaussianRational};
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::str::FromStr;

    type Rat = BigRational;

    fn key(text: &str) -> VertexKey {
        VertexKey::from_str(text).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        ratio(n, d)
    }

    fn zline_section(k: usize) -> SectionMatrix<Rat> {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        let e = g.enumerate(&[key("0")], k).unwrap();
        build_section(&op, &e, k).unwrap()
    }

    fn triangle_demo() -> (Operator<Rat>, Enumeration) {
        let union = LocallyFiniteGraph::disjoint_union(vec![
            LocallyFiniteGraph::explicit(&[("a", "b"), ("b", "c"), ("a", "c")], &[], true)
                .unwrap(),
            LocallyFiniteGraph::directed_ray(),
        ])
        .unwrap();
        // triangle component enumerated first; the window never sees the ray
        let e = union.enumerate(&[key("0:a")], 3).unwrap();
        let op = laplacian::<Rat>(&union).unwrap();
        (op, e)
    }

    #[test]
    fn zline_laplacian_section_entries() {
        let m = zline_section(3);
        let expected = [
            [rat(1, 1), rat(-1, 2), rat(-1, 2)],
            [rat(-1, 2), rat(1, 1), rat(0, 1)],
            [rat(-1, 2), rat(0, 1), rat(1, 1)],
        ];
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(m.entry(i, j), &expected[i - 1][j - 1], "entry ({i},{j})");
            }
        }
        assert_eq!(m.determinant().unwrap(), rat(1, 2));
        assert_eq!(m.rank().unwrap(), 3);
        assert!(m.is_injective().unwrap());
        assert!(m.kernel_basis().unwrap().is_empty());
    }

    #[test]
    fn one_by_one_section() {
        let m = zline_section(1);
        assert_eq!(m.entry(1, 1), &rat(1, 1));
        assert_eq!(m.determinant().unwrap(), rat(1, 1));
        assert!(m.is_injective().unwrap());
    }

    #[test]
    fn adjacency_section_entries() {
        let g = LocallyFiniteGraph::zline();
        let op = adjacency::<Rat>(&g);
        let e = g.enumerate(&[key("0")], 3).unwrap();
        let m = build_section(&op, &e, 3).unwrap();
        let expected = [
            [rat(0, 1), rat(1, 1), rat(1, 1)],
            [rat(1, 1), rat(0, 1), rat(0, 1)],
            [rat(1, 1), rat(0, 1), rat(0, 1)],
        ];
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(m.entry(i, j), &expected[i - 1][j - 1]);
            }
        }
        assert_eq!(m.rank().unwrap(), 2);
    }

    #[test]
    fn triangle_section_is_singular_with_constant_kernel() {
        let (op, e) = triangle_demo();
        let m = build_section(&op, &e, 3).unwrap();
        assert_eq!(m.determinant().unwrap(), rat(0, 1));
        assert_eq!(m.rank().unwrap(), 2);
        let basis = m.kernel_basis().unwrap();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(!v[0].is_zero());
        assert_eq!(v[1], v[0]);
        assert_eq!(v[2], v[0]);
    }

    #[test]
    fn zero_section_kernel_is_standard_basis() {
        let g = LocallyFiniteGraph::zline();
        let op = custom_operator::<Rat>(&g, 0, [], None).unwrap();
        let e = g.enumerate(&[key("0")], 2).unwrap();
        let m = build_section(&op, &e, 2).unwrap();
        assert_eq!(m.rank().unwrap(), 0);
        let basis = m.kernel_basis().unwrap();
        assert_eq!(
            basis,
            vec![
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ]
        );
    }

    #[test]
    fn enumeration_too_short_is_reported() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        let e = g.enumerate(&[key("0")], 3).unwrap();
        assert!(matches!(
            build_section(&op, &e, 5),
            Err(SectionError::EnumerationTooShort { have: 3, need: 5 })
        ));
    }

    #[test]
    fn rows_matrix_extends_the_section() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        let e = g.enumerate(&[key("0")], 3).unwrap();
        let rows = build_rows_matrix(&op, &e, 3).unwrap();
        assert_eq!(rows.width(), 5);
        assert_eq!(
            rows.outside_columns(),
            &[key("-2"), key("2")],
            "outside columns sorted by key"
        );
        let section = build_section(&op, &e, 3).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(rows.entry(i, j), section.entry(i, j));
            }
        }
        assert_eq!(rows.entry(2, 4), &rat(-1, 2));
        assert_eq!(rows.rank().unwrap(), 3);
        assert!(rows_independent(&op, &e, 3).unwrap());
    }

    #[test]
    fn dependent_rows_on_the_triangle() {
        let (op, e) = triangle_demo();
        assert!(!rows_independent(&op, &e, 3).unwrap());
        assert!(rows_independent(&op, &e, 1).unwrap());
    }

    #[test]
    fn injectivity_implies_row_independence() {
        let families = [
            (LocallyFiniteGraph::zline(), key("0")),
            (LocallyFiniteGraph::zsquare(), key("(0,0)")),
            (LocallyFiniteGraph::regular_tree(3).unwrap(), key("/")),
        ];
        for (g, root) in families {
            let op = laplacian::<Rat>(&g).unwrap();
            let e = g.enumerate(&[root], 25).unwrap();
            for k in 1..=25 {
                let injective = build_section(&op, &e, k).unwrap().is_injective().unwrap();
                if injective {
                    assert!(
                        rows_independent(&op, &e, k).unwrap(),
                        "k={k} on {}",
                        g.family_name()
                    );
                }
            }
        }
    }

    #[test]
    fn section_entries_respect_support() {
        let g = LocallyFiniteGraph::zsquare();
        let op = laplacian::<Rat>(&g).unwrap();
        let e = g.enumerate(&[key("(0,0)")], 12).unwrap();
        let m = build_section(&op, &e, 12).unwrap();
        for i in 1..=12 {
            let support = section_support(&op, &e, 12, i).unwrap();
            for j in 1..=12 {
                if !m.entry(i, j).is_zero() {
                    assert!(support.positions.contains(&j), "entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn seminorm_examples() {
        let g = LocallyFiniteGraph::explicit(&[("a", "b"), ("b", "c")], &[], true).unwrap();
        let e = g.enumerate(&[key("a")], 3).unwrap();
        let f = FunctionOnV::from_pairs([
            (key("a"), rat(1, 1)),
            (key("b"), rat(-2, 1)),
            (key("c"), rat(5, 1)),
        ]);
        assert_eq!(seminorm(&f, &e, 2), rat(3, 1));
        assert_eq!(seminorm(&FunctionOnV::<Rat>::new(), &e, 3), rat(0, 1));
        let g1 = FunctionOnV::from_pairs([(key("a"), rat(-3, 4))]);
        assert_eq!(seminorm(&g1, &e, 1), rat(3, 4));
    }

    #[test]
    fn seminorm_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = LocallyFiniteGraph::zline();
        let e = g.enumerate(&[key("0")], 21).unwrap();
        for _ in 0..20 {
            let f = FunctionOnV::from_pairs(e.order().iter().map(|v| {
                (v.clone(), rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9)))
            }));
            for k in 1..=20 {
                assert!(seminorm(&f, &e, k) <= seminorm(&f, &e, k + 1));
            }
        }
    }

    #[test]
    fn gaussian_seminorm_sums_squared_moduli() {
        let g = LocallyFiniteGraph::explicit(&[("a", "b")], &[], true).unwrap();
        let e = g.enumerate(&[key("a")], 2).unwrap();
        let f = FunctionOnV::from_pairs([
            (key("a"), GaussianRational::new(rat(1, 1), rat(1, 1))),
            (key("b"), GaussianRational::new(rat(0, 1), rat(2, 1))),
        ]);
        // |1+i|^2 + |2i|^2 = 2 + 4
        assert_eq!(seminorm(&f, &e, 2), rat(6, 1));
    }

    #[test]
    fn float_mode_exact_operations_refuse() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<f64>(&g).unwrap();
        let e = g.enumerate(&[key("0")], 3).unwrap();
        let m = build_section(&op, &e, 3).unwrap();
        assert!(matches!(
            m.determinant(),
            Err(SectionError::FloatModeUnsupported { .. })
        ));
        assert!(matches!(
            m.rank(),
            Err(SectionError::FloatModeUnsupported { .. })
        ));
        let (injective, det) = m.is_injective_heuristic();
        assert!(injective);
        assert!((det - 0.5).abs() < 1e-12);
    }

    /// Fraction-free and naive elimination agree exactly on seeded
    /// random rational matrices.
    #[test]
    fn elimination_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for round in 0..100 {
            let m: Dense<Rat> = Dense::from_fn(8, 8, |_, _| {
                rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4))
            });
            assert_eq!(
                elim::determinant(&m),
                naive::determinant_dense(&m),
                "determinant mismatch in round {round}"
            );
            assert_eq!(
                elim::rank(&m),
                naive::rank_dense(&m),
                "rank mismatch in round {round}"
            );
        }
    }
}
