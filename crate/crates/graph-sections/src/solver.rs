//! Exact finite-window preimages and stabilization diagnostics.
//!
//! `solve_section` inverts an injective k-section exactly: the result
//! is the unique function supported on the first k positions whose
//! image matches the right-hand side on those positions. No global
//! preimage is constructed; what a window solve cannot promise is
//! anything beyond its window, and plain per-coordinate traces across
//! growing windows need not converge. `solve_progressive` reports
//! those traces without asserting convergence.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Enumeration;
use crate::operator::{apply, FunctionOnV, Operator, OperatorError};
use crate::scalar::Scalar;
use crate::sections::{build_section, SectionError, SectionMatrix};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolveError<S: Scalar> {
    #[error("section at k={k} is singular (kernel dimension {})", kernel.len())]
    SingularSection { k: usize, kernel: Vec<Vec<S>> },
    #[error("{operation} requires an exact scalar mode")]
    FloatModeUnsupported { operation: &'static str },
    #[error("ladder must be strictly ascending, got {0:?}")]
    LadderNotAscending(Vec<usize>),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Exact solution of one k-section system.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionSolution<S: Scalar> {
    pub k: usize,
    /// Supported in the first k enumerated positions.
    pub f: FunctionOnV<S>,
    /// True once the exact residual audit on positions 1..=k passed.
    pub residual_checked: bool,
}

/// Per-position value traces across a ladder of window sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationReport<S: Scalar> {
    pub ladder: Vec<usize>,
    pub stability_window: usize,
    /// For each position j, the pairs (k, f_k(j)) with j <= k.
    pub traces: BTreeMap<usize, Vec<(usize, S)>>,
    /// Position j is stable when the last `stability_window` ladder
    /// entries all contain j and agree on its value exactly.
    pub stable: BTreeMap<usize, bool>,
}

fn ensure_exact<S: Scalar>(operation: &'static str) -> Result<(), SolveError<S>> {
    if S::exact() {
        Ok(())
    } else {
        Err(SolveError::FloatModeUnsupported { operation })
    }
}

fn window_rhs<S: Scalar>(g: &FunctionOnV<S>, e: &Enumeration, k: usize) -> Vec<S> {
    (1..=k).map(|j| g.value(e.vertex(j))).collect()
}

pub(crate) fn solve_on_section<S: Scalar>(
    section: &SectionMatrix<S>,
    rhs: &[S],
) -> Result<Vec<S>, SolveError<S>> {
    match crate::sections::solve_dense_fraction_free(section, rhs) {
        Some(x) => Ok(x),
        None => Err(SolveError::SingularSection {
            k: section.k(),
            kernel: section.kernel_basis()?,
        }),
    }
}

/// Solves the truncated system exactly: the returned function is
/// supported in positions 1..=k and reproduces `g` on those positions
/// bit-exactly (audited before returning).
pub fn solve_section<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    g: &FunctionOnV<S>,
    k: usize,
) -> Result<SectionSolution<S>, SolveError<S>> {
    ensure_exact::<S>("solve_section")?;
    let section = build_section(op, e, k)?;
    let rhs = window_rhs(g, e, k);
    let x = solve_on_section(&section, &rhs)?;
    let f = FunctionOnV::from_pairs(
        x.into_iter()
            .enumerate()
            .map(|(idx, value)| (e.vertex(idx + 1).clone(), value)),
    );
    let residuals = verify(op, &f, g, &(1..=k).collect::<Vec<_>>(), e)?;
    assert!(
        residuals.iter().all(|(_, r)| r.is_zero()),
        "exact solve left a nonzero window residual"
    );
    Ok(SectionSolution {
        k,
        f,
        residual_checked: true,
    })
}

/// Solves along an ascending ladder of window sizes and reports
/// per-position stabilization.
pub fn solve_progressive<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    g: &FunctionOnV<S>,
    ladder: &[usize],
    stability_window: usize,
) -> Result<(Vec<SectionSolution<S>>, StabilizationReport<S>), SolveError<S>> {
    ensure_exact::<S>("solve_progressive")?;
    if ladder.windows(2).any(|w| w[0] >= w[1]) || ladder.is_empty() {
        return Err(SolveError::LadderNotAscending(ladder.to_vec()));
    }
    let mut solutions = Vec::with_capacity(ladder.len());
    for &k in ladder {
        solutions.push(solve_section(op, e, g, k)?);
    }
    let max_k = *ladder.last().expect("ladder is nonempty");
    let mut traces: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
    for solution in &solutions {
        for j in 1..=solution.k {
            traces
                .entry(j)
                .or_default()
                .push((solution.k, solution.f.value(e.vertex(j))));
        }
    }
    let window = stability_window.max(1);
    let mut stable = BTreeMap::new();
    for j in 1..=max_k {
        let trace = &traces[&j];
        let is_stable = if trace.len() < window {
            false
        } else {
            let tail = &trace[trace.len() - window..];
            // the tail must cover the last `window` ladder entries
            let expected: Vec<usize> = ladder[ladder.len() - window..].to_vec();
            tail.iter().map(|(k, _)| *k).collect::<Vec<_>>() == expected
                && tail.windows(2).all(|pair| pair[0].1 == pair[1].1)
        };
        stable.insert(j, is_stable);
    }
    Ok((
        solutions,
        StabilizationReport {
            ladder: ladder.to_vec(),
            stability_window: window,
            traces,
            stable,
        },
    ))
}

/// Exact residual table `A f(v_j) - g(v_j)` at the requested 1-based
/// positions. All zeros iff the solution is valid there; positions
/// beyond a solve window generally show the truncation.
pub fn verify<S: Scalar>(
    op: &Operator<S>,
    f: &FunctionOnV<S>,
    g: &FunctionOnV<S>,
    positions: &[usize],
    e: &Enumeration,
) -> Result<Vec<(usize, S)>, OperatorError> {
    let mut table = Vec::with_capacity(positions.len());
    for &j in positions {
        let vertex = e.vertex(j);
        let residual = apply(op, f, vertex)?.sub(&g.value(vertex));
        table.push((j, residual));
    }
    Ok(table)
}
