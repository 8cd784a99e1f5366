//! Finite-hopping-range operators as per-vertex stencil rows.
//!
//! An operator is a pure row function `VertexKey -> StencilRow`: the
//! finitely supported coefficients of `A f(v) = sum_w a_{v,w} f(w)`.
//! Built-ins cover the combinatorial Laplacian `f(v) - avg of f over
//! neighbors`, its nonnegative diagonal perturbations, and the plain
//! adjacency operator (a negative control: it violates the maximum
//! principle). Zero coefficients are never stored, so row support is
//! the mathematical support.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{BigRational, Signed, Zero};
use thiserror::Error;

use crate::graph::{Enumeration, GraphError, LocallyFiniteGraph, OperatorPrecondition, VertexKey};
use crate::scalar::{ratio, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("vertex {vertex} has degree zero")]
    ZeroDegree { vertex: String },
    #[error("operator requires symmetric adjacency, violated at {vertex} of {family}")]
    DirectedGraph { family: String, vertex: String },
    #[error("operator requires a loop-free graph, violated at {vertex} of {family}")]
    NotSimplicial { family: String, vertex: String },
    #[error("lambda must be nonnegative, got {value} at {vertex}")]
    NegativeLambda { vertex: String, value: String },
    #[error("custom row at {vertex} has coefficient at {coefficient} outside the radius-{radius} ball")]
    SupportOutsideBall {
        vertex: String,
        coefficient: String,
        radius: u32,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<OperatorPrecondition> for OperatorError {
    fn from(e: OperatorPrecondition) -> Self {
        match e {
            OperatorPrecondition::DirectedGraph { family } => OperatorError::DirectedGraph {
                family,
                vertex: "(any)".to_string(),
            },
            OperatorPrecondition::Graph(g) => OperatorError::Graph(g),
        }
    }
}

/// Finitely supported function on the vertex set; lookups outside the
/// support return exact zero, zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOnV<S: Scalar> {
    values: BTreeMap<VertexKey, S>,
}

impl<S: Scalar> Default for FunctionOnV<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> FunctionOnV<S> {
    pub fn new() -> Self {
        FunctionOnV {
            values: BTreeMap::new(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexKey, S)>) -> Self {
        let mut f = Self::new();
        for (v, s) in pairs {
            f.insert(v, s);
        }
        f
    }

    /// Point mass at `v`.
    pub fn indicator(v: VertexKey) -> Self {
        Self::from_pairs([(v, S::one())])
    }

    pub fn insert(&mut self, v: VertexKey, value: S) {
        if value.is_zero() {
            self.values.remove(&v);
        } else {
            self.values.insert(v, value);
        }
    }

    pub fn value(&self, v: &VertexKey) -> S {
        self.values.get(v).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&VertexKey, &S)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self::from_pairs(
            self.values
                .iter()
                .map(|(v, s)| (v.clone(), s.mul(factor))),
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, s) in other.support() {
            let sum = out.value(v).add(s);
            out.insert(v.clone(), sum);
        }
        out
    }
}

/// One row functional of an operator: the coefficients of
/// `A f(vertex)`, supported inside `ball(vertex, radius)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilRow<S: Scalar> {
    vertex: VertexKey,
    radius: u32,
    coeffs: BTreeMap<VertexKey, S>,
}

impl<S: Scalar> StencilRow<S> {
    pub fn new(
        vertex: VertexKey,
        radius: u32,
        coeffs: impl IntoIterator<Item = (VertexKey, S)>,
    ) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .collect();
        StencilRow {
            vertex,
            radius,
            coeffs,
        }
    }

    pub fn vertex(&self) -> &VertexKey {
        &self.vertex
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn coeff(&self, v: &VertexKey) -> S {
        self.coeffs.get(v).cloned().unwrap_or_else(S::zero)
    }

    pub fn diagonal(&self) -> S {
        self.coeff(&self.vertex)
    }

    pub fn support(&self) -> impl Iterator<Item = (&VertexKey, &S)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Exact sum of all coefficients (zero for the Laplacian rows:
    /// constants are annihilated stencil-wise).
    pub fn coefficient_sum(&self) -> S {
        let mut sum = S::zero();
        for s in self.coeffs.values() {
            sum = sum.add(s);
        }
        sum
    }

    /// Exact `sum_w a_w f(w)`; touches only the row support.
    pub fn apply(&self, f: &FunctionOnV<S>) -> S {
        let mut sum = S::zero();
        for (w, a) in &self.coeffs {
            let fw = f.value(w);
            if !fw.is_zero() {
                sum = sum.add(&a.mul(&fw));
            }
        }
        sum
    }
}

type RowFn<S> = dyn Fn(&VertexKey) -> Result<StencilRow<S>, OperatorError> + Send + Sync;

/// A linear operator given by its pure row function.
#[derive(Clone)]
pub struct Operator<S: Scalar> {
    name: String,
    uniform_radius: Option<u32>,
    row_fn: Arc<RowFn<S>>,
}

impl<S: Scalar> std::fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Operator({})", self.name)
    }
}

impl<S: Scalar> Operator<S> {
    pub fn from_row_fn(
        name: impl Into<String>,
        uniform_radius: Option<u32>,
        row_fn: impl Fn(&VertexKey) -> Result<StencilRow<S>, OperatorError> + Send + Sync + 'static,
    ) -> Self {
        Operator {
            name: name.into(),
            uniform_radius,
            row_fn: Arc::new(row_fn),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn uniform_radius(&self) -> Option<u32> {
        self.uniform_radius
    }

    pub fn row(&self, v: &VertexKey) -> Result<StencilRow<S>, OperatorError> {
        (self.row_fn)(v)
    }
}

/// Laplacian stencil at one vertex: diagonal 1, each neighbor
/// `-1/deg(v)`.
///
/// The undirected/loop-free preconditions are checked at the queried
/// vertex, so on a graph with directed parts (a union carrying a ray,
/// say) rows exist exactly where the formula is defined.
pub fn laplacian_row<S: Scalar>(
    g: &LocallyFiniteGraph,
    v: &VertexKey,
) -> Result<StencilRow<S>, OperatorError> {
    let adjacency = g.neighbors(v)?;
    if !g.is_undirected() && adjacency.out != adjacency.into {
        return Err(OperatorError::DirectedGraph {
            family: g.family_name(),
            vertex: v.to_string(),
        });
    }
    if !g.is_simplicial() && adjacency.out.iter().any(|w| w == v) {
        return Err(OperatorError::NotSimplicial {
            family: g.family_name(),
            vertex: v.to_string(),
        });
    }
    let neighbors = adjacency.out;
    if neighbors.is_empty() {
        return Err(OperatorError::ZeroDegree {
            vertex: v.to_string(),
        });
    }
    let degree = neighbors.len() as i64;
    let mut coeffs = vec![(v.clone(), S::one())];
    for w in neighbors {
        coeffs.push((w, ratio::<S>(-1, degree)));
    }
    Ok(StencilRow::new(v.clone(), 1, coeffs))
}

/// Laplacian with an added nonnegative diagonal: diagonal `1 + lambda(v)`.
pub fn laplacian_plus_lambda_row<S: Scalar>(
    g: &LocallyFiniteGraph,
    lambda: &Lambda,
    v: &VertexKey,
) -> Result<StencilRow<S>, OperatorError> {
    let base = laplacian_row::<S>(g, v)?;
    let shift = lambda.value_at(v)?;
    if shift.is_zero() {
        return Ok(base);
    }
    let diagonal = S::one().add(&S::from_big_rational(&shift));
    let coeffs = base
        .support()
        .map(|(w, s)| {
            if w == v {
                (w.clone(), diagonal.clone())
            } else {
                (w.clone(), s.clone())
            }
        })
        .collect::<Vec<_>>();
    Ok(StencilRow::new(v.clone(), 1, coeffs))
}

/// Adjacency stencil: 1 at each out-neighbor, no diagonal.
pub fn adjacency_row<S: Scalar>(
    g: &LocallyFiniteGraph,
    v: &VertexKey,
) -> Result<StencilRow<S>, OperatorError> {
    let out = g.neighbors(v)?.out;
    Ok(StencilRow::new(
        v.clone(),
        1,
        out.into_iter().map(|w| (w, S::one())),
    ))
}

/// Nonnegative diagonal perturbation, a constant plus per-vertex
/// overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lambda {
    constant: Option<BigRational>,
    values: BTreeMap<VertexKey, BigRational>,
}

impl Lambda {
    pub fn zero() -> Self {
        Lambda::default()
    }

    pub fn constant(value: BigRational) -> Result<Self, OperatorError> {
        let lambda = Lambda {
            constant: Some(value),
            values: BTreeMap::new(),
        };
        lambda.validate()?;
        Ok(lambda)
    }

    pub fn from_table(
        constant: Option<BigRational>,
        values: impl IntoIterator<Item = (VertexKey, BigRational)>,
    ) -> Result<Self, OperatorError> {
        let lambda = Lambda {
            constant,
            values: values.into_iter().collect(),
        };
        lambda.validate()?;
        Ok(lambda)
    }

    fn validate(&self) -> Result<(), OperatorError> {
        if let Some(c) = &self.constant {
            if c.is_negative() {
                return Err(OperatorError::NegativeLambda {
                    vertex: "(constant)".to_string(),
                    value: c.to_string(),
                });
            }
        }
        for (v, value) in &self.values {
            if value.is_negative() {
                return Err(OperatorError::NegativeLambda {
                    vertex: v.to_string(),
                    value: value.to_string(),
                });
            }
        }
        Ok(())
    }

    fn value_at(&self, v: &VertexKey) -> Result<BigRational, OperatorError> {
        if let Some(value) = self.values.get(v) {
            return Ok(value.clone());
        }
        Ok(self.constant.clone().unwrap_or_else(BigRational::zero))
    }
}

/// The combinatorial Laplacian as an operator value.
pub fn laplacian<S: Scalar>(g: &LocallyFiniteGraph) -> Result<Operator<S>, OperatorError> {
    let g = g.clone();
    Ok(Operator::from_row_fn("laplacian", Some(1), move |v| {
        laplacian_row(&g, v)
    }))
}

pub fn laplacian_plus_lambda<S: Scalar>(
    g: &LocallyFiniteGraph,
    lambda: Lambda,
) -> Result<Operator<S>, OperatorError> {
    lambda.validate()?;
    let g = g.clone();
    Ok(Operator::from_row_fn(
        "laplacian_plus_lambda",
        Some(1),
        move |v| laplacian_plus_lambda_row(&g, &lambda, v),
    ))
}

pub fn adjacency<S: Scalar>(g: &LocallyFiniteGraph) -> Operator<S> {
    let g = g.clone();
    Operator::from_row_fn("adjacency", Some(1), move |v| adjacency_row(&g, v))
}

/// Operator from an explicit row table with a declared hopping radius,
/// falling back to `default` (or to the zero row) off the table.
///
/// Every listed row's support must lie inside `ball(vertex, radius)`.
pub fn custom_operator<S: Scalar>(
    g: &LocallyFiniteGraph,
    radius: u32,
    rows: impl IntoIterator<Item = (VertexKey, Vec<(VertexKey, S)>)>,
    default: Option<Operator<S>>,
) -> Result<Operator<S>, OperatorError> {
    let mut table: BTreeMap<VertexKey, StencilRow<S>> = BTreeMap::new();
    for (vertex, coeffs) in rows {
        let row = StencilRow::new(vertex.clone(), radius, coeffs);
        let ball = g.ball(&vertex, radius)?;
        for (w, _) in row.support() {
            if !ball.contains(w) {
                return Err(OperatorError::SupportOutsideBall {
                    vertex: vertex.to_string(),
                    coefficient: w.to_string(),
                    radius,
                });
            }
        }
        table.insert(vertex, row);
    }
    let table = Arc::new(table);
    let uniform = match &default {
        Some(op) => op.uniform_radius().map(|r| r.max(radius)),
        None => Some(radius),
    };
    Ok(Operator::from_row_fn("custom", uniform, move |v| {
        if let Some(row) = table.get(v) {
            return Ok(row.clone());
        }
        match &default {
            Some(op) => op.row(v),
            None => Ok(StencilRow::new(v.clone(), radius, Vec::<(VertexKey, S)>::new())),
        }
    }))
}

/// Exact `A f(v)`; depends only on `f` restricted to
/// `ball(v, radius(v))`.
pub fn apply<S: Scalar>(
    op: &Operator<S>,
    f: &FunctionOnV<S>,
    v: &VertexKey,
) -> Result<S, OperatorError> {
    Ok(op.row(v)?.apply(f))
}

/// Window positions supporting one row, plus whether any support
/// vertex falls outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportIndices {
    /// 1-based positions `l` with `v_l` in the row's support.
    pub positions: BTreeSet<usize>,
    /// True when some support vertex is not among the window.
    pub outside: bool,
}

/// Support positions of row `j` relative to the full enumeration
/// window.
pub fn row_support_indices<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    j: usize,
) -> Result<SupportIndices, OperatorError> {
    support_in_window(op, e, j, e.len())
}

/// Same, against the window of the first `window` positions only.
pub(crate) fn support_in_window<S: Scalar>(
    op: &Operator<S>,
    e: &Enumeration,
    j: usize,
    window: usize,
) -> Result<SupportIndices, OperatorError> {
    assert!(j >= 1 && j <= e.len(), "position {j} outside enumeration");
    let row = op.row(e.vertex(j))?;
    let mut positions = BTreeSet::new();
    let mut outside = false;
    for (w, _) in row.support() {
        match e.position_of(w) {
            Some(l) if l <= window => {
                positions.insert(l);
            }
            _ => outside = true,
        }
    }
    Ok(SupportIndices { positions, outside })
}
