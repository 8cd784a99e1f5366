//! Exact finite sections of finite-hopping-range operators on locally
//! finite graphs.
//!
//! The pipeline: a lazily generated graph is enumerated breadth-first
//! from chosen roots; an operator given by per-vertex stencil rows is
//! truncated to the k-by-k window section; injectivity of that section
//! is then decided three independent ways — exact determinant/rank,
//! linear independence of the untruncated row functionals, and a
//! maximum-principle propagation certificate — and injective sections
//! are inverted exactly to produce finite-window preimages of a given
//! right-hand side.
//!
//! Everything certificate-shaped runs over exact scalars (rationals or
//! Gaussian rationals); a float mode exists for large-window
//! exploration and supports only a clearly labeled injectivity
//! heuristic.
//!
//! The `graph-sections` binary drives the same pipeline from config
//! files; see the crate README for the file formats.

pub mod cli;
pub mod config;
pub mod graph;
pub mod maxprinciple;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod sections;
pub mod solver;

pub use graph::{Enumeration, GraphError, LocallyFiniteGraph, VertexKey};
pub use operator::{FunctionOnV, Operator, OperatorError, StencilRow};
pub use scalar::{GaussianRational, Scalar, ScalarMode};
