//! Pointwise maximum-principle certificates and the propagation
//! argument for window injectivity.
//!
//! The maximum principle at a vertex v says: whenever `A f(v) = 0` and
//! `|f(v)|` is maximal over the ball `U_n(v)`, then `|f|` is constant
//! on that ball. The property quantifies over all of `K^V`, so it is
//! not finitely checkable in general; this module implements a sound
//! sufficient criterion, a seeded randomized falsifier, and an honest
//! `Unknown` in between.
//!
//! Structural criterion. Write `d = a_vv` and `s = sum of |a_vw|` over
//! `w != v`.
//! * Strict dominance `|d| > s`: from `A f(v) = 0` and maximality,
//!   `|d||f(v)| = |sum a_vw f(w)| <= s |f(v)|`, so `(|d|-s)|f(v)| <= 0`
//!   and `f(v) = 0`; the maximal modulus is 0 and `|f|` is constant.
//! * Equality dominance `|d| = s`, `d != 0`, with every vertex of the
//!   punctured ball carrying a nonzero coefficient: the same estimate
//!   becomes an equality chain, so `|f(w)| = |f(v)|` wherever
//!   `a_vw != 0`, which is the whole punctured ball.
//!
//! Propagation. For a window of k positions where every row is
//! structurally certified, consider the digraph with an edge `j -> l`
//! for each in-window support position l of row j. A coordinate
//! vector in the kernel of the truncated section takes its maximal
//! modulus at some position j; the principle pushes that modulus along
//! the edges. Reaching a row with support outside the window pushes it
//! onto a coordinate where the vector vanishes, and reaching a strict
//! position kills it directly. If every position reaches such a
//! terminator, the kernel is trivial and the window section is
//! certified injective.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Enumeration, GraphError, LocallyFiniteGraph, VertexKey};
use crate::operator::{support_in_window, FunctionOnV, Operator, OperatorError, StencilRow};
use crate::scalar::{ratio, Scalar, ScalarMode};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MaxPrincipleError {
    #[error("{operation} requires an exact scalar mode")]
    FloatModeUnsupported { operation: &'static str },
    #[error("row at {vertex} has no off-diagonal coefficient to solve for")]
    NoOffDiagonal { vertex: String },
    #[error("no structural certificate at position {position} (vertex {vertex}): {status}")]
    PremiseFailed {
        position: usize,
        vertex: String,
        status: String,
    },
    #[error("enumeration has {have} vertices, certificate needs {need}")]
    WindowTooShort { have: usize, need: usize },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn ensure_exact<S: Scalar>(operation: &'static str) -> Result<(), MaxPrincipleError> {
    if S::exact() {
        Ok(())
    } else {
        Err(MaxPrincipleError::FloatModeUnsupported { operation })
    }
}

/// Per-vertex verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum CertificateStatus<S: Scalar> {
    /// Strict diagonal dominance.
    StructuralStrict,
    /// Equality dominance with full support on the punctured ball.
    StructuralEquality,
    /// A concrete violating function was found.
    Falsified { witness: FunctionOnV<S> },
    /// Neither certified nor falsified.
    Unknown,
}

impl<S: Scalar> CertificateStatus<S> {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateStatus::StructuralStrict => "structural_strict",
            CertificateStatus::StructuralEquality => "structural_equality",
            CertificateStatus::Falsified { .. } => "falsified",
            CertificateStatus::Unknown => "unknown",
        }
    }

    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            CertificateStatus::StructuralStrict | CertificateStatus::StructuralEquality
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxPrincipleCertificate<S: Scalar> {
    pub vertex: VertexKey,
    pub status: CertificateStatus<S>,
    /// Ball radius the verdict refers to: the row's hopping radius,
    /// raised to a caller-declared principle radius when one is given.
    pub radius_used: u32,
}

fn radius_used<S: Scalar>(row: &StencilRow<S>, principle_radius: Option<u32>) -> u32 {
    principle_radius
        .map(|r| r.max(row.radius()))
        .unwrap_or_else(|| row.radius())
}

/// Sound structural check; never returns `Falsified`.
///
/// In Gaussian mode the dominance comparison needs the true moduli
/// `|a_vw|`; when some coefficient has an irrational modulus the
/// verdict is `Unknown` rather than an approximation.
pub fn check_structural<S: Scalar>(
    op: &Operator<S>,
    g: &LocallyFiniteGraph,
    v: &VertexKey,
    principle_radius: Option<u32>,
) -> Result<MaxPrincipleCertificate<S>, MaxPrincipleError> {
    ensure_exact::<S>("structural certification")?;
    let row = op.row(v)?;
    let radius = radius_used(&row, principle_radius);
    let unknown = Ok(MaxPrincipleCertificate {
        vertex: v.clone(),
        status: CertificateStatus::Unknown,
        radius_used: radius,
    });
    let diagonal = row.diagonal();
    let diagonal_magnitude = match diagonal.rational_magnitude() {
        Some(m) => m,
        None => return unknown,
    };
    let mut off_sum = BigRational::from_integer(0.into());
    for (w, coeff) in row.support() {
        if w == v {
            continue;
        }
        match coeff.rational_magnitude() {
            Some(m) => off_sum += m,
            None => return unknown,
        }
    }
    let status = if diagonal_magnitude > off_sum {
        CertificateStatus::StructuralStrict
    } else if !diagonal.is_zero() && diagonal_magnitude == off_sum {
        let ball = g.ball(v, radius)?;
        let full_support = ball
            .iter()
            .filter(|w| *w != v)
            .all(|w| !row.coeff(w).is_zero());
        if full_support {
            CertificateStatus::StructuralEquality
        } else {
            CertificateStatus::Unknown
        }
    } else {
        CertificateStatus::Unknown
    };
    Ok(MaxPrincipleCertificate {
        vertex: v.clone(),
        status,
        radius_used: radius,
    })
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Randomness is fully determined by (seed, vertex, trial index), so
/// trials can run in any order and reproduce.
fn trial_rng(seed: u64, v: &VertexKey, trial: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[0..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&fnv1a64(&v.to_string()).to_le_bytes());
    bytes[16..24].copy_from_slice(&trial.to_le_bytes());
    bytes[24..32].copy_from_slice(&0x9e3779b97f4a7c15u64.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

/// Rationals `p/q` with `|p| <= q <= 4`, so every sample has modulus
/// at most 1; Gaussian mode mixes in an imaginary part on half the
/// draws.
fn sample_lattice<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let q = rng.gen_range(1i64..=4);
    let p = rng.gen_range(-q..=q);
    let real: S = ratio(p, q);
    if matches!(S::MODE, ScalarMode::Gaussian) && rng.gen_bool(0.5) {
        let qi = rng.gen_range(1i64..=4);
        let pi = rng.gen_range(-qi..=qi);
        let imaginary: S = ratio(pi, qi);
        let unit = S::parse("i").expect("gaussian mode parses the imaginary unit");
        return real.add(&unit.mul(&imaginary));
    }
    real
}

/// Seeded randomized search for a function violating the maximum
/// principle at `v`: sample the punctured ball from a rational
/// lattice, solve `A f(v) = 0` for one designated support coordinate,
/// reject samples that break the maximality premise, then test the
/// implication. Returned witnesses satisfy the `Falsified` conditions
/// exactly; [`verify_witness`] is the independent re-check.
pub fn falsify<S: Scalar>(
    op: &Operator<S>,
    g: &LocallyFiniteGraph,
    v: &VertexKey,
    trials: u64,
    seed: u64,
    principle_radius: Option<u32>,
) -> Result<Option<FunctionOnV<S>>, MaxPrincipleError> {
    ensure_exact::<S>("maximum-principle falsification")?;
    let row = op.row(v)?;
    let radius = radius_used(&row, principle_radius);
    let off_support: Vec<VertexKey> = row
        .support()
        .filter(|(w, _)| *w != v)
        .map(|(w, _)| w.clone())
        .collect();
    if off_support.is_empty() {
        return Err(MaxPrincipleError::NoOffDiagonal {
            vertex: v.to_string(),
        });
    }
    let ball = g.ball(v, radius)?;
    let punctured: Vec<VertexKey> = ball.iter().filter(|w| *w != v).cloned().collect();
    let center_value = S::one();
    let center_magnitude = center_value.magnitude();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, v, trial);
        let designated = &off_support[(trial % off_support.len() as u64) as usize];
        let mut witness = FunctionOnV::new();
        witness.insert(v.clone(), center_value.clone());
        for w in &punctured {
            if w == designated {
                continue;
            }
            witness.insert(w.clone(), sample_lattice::<S>(&mut rng));
        }
        // solve the single constraint A f(v) = 0 for the designated
        // coordinate
        let mut partial = S::zero();
        for (w, coeff) in row.support() {
            if w == designated {
                continue;
            }
            let value = witness.value(w);
            if !value.is_zero() {
                partial = partial.add(&coeff.mul(&value));
            }
        }
        let solved = match partial.neg().div(&row.coeff(designated)) {
            Some(s) => s,
            None => continue,
        };
        witness.insert(designated.clone(), solved);
        // maximality premise: |f(v)| is the max over the ball
        let premise_holds = punctured
            .iter()
            .all(|w| witness.value(w).magnitude() <= center_magnitude);
        if !premise_holds {
            continue;
        }
        // implication violated: some |f(w)| differs from |f(v)|
        let violated = punctured
            .iter()
            .any(|w| witness.value(w).magnitude() != center_magnitude);
        if violated {
            debug_assert!(verify_witness(op, g, v, &witness, radius)?);
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Independent exact re-check of the three `Falsified` conditions:
/// `A f(v) = 0`, `|f(v)|` maximal on the ball, and some ball vertex
/// with `|f(w)| != |f(v)|`.
pub fn verify_witness<S: Scalar>(
    op: &Operator<S>,
    g: &LocallyFiniteGraph,
    v: &VertexKey,
    witness: &FunctionOnV<S>,
    radius: u32,
) -> Result<bool, MaxPrincipleError> {
    let row = op.row(v)?;
    if !row.apply(witness).is_zero() {
        return Ok(false);
    }
    let center_magnitude = witness.value(v).magnitude();
    let ball = g.ball(v, radius)?;
    let maximal = ball
        .iter()
        .all(|w| witness.value(w).magnitude() <= center_magnitude);
    let violated = ball
        .iter()
        .any(|w| witness.value(w).magnitude() != center_magnitude);
    Ok(maximal && violated)
}

/// What a propagation path ends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeTerminal {
    /// A row whose support leaves the window: the maximal modulus
    /// lands on a coordinate where the kernel vector vanishes.
    OutsideWindow,
    /// A strictly dominant row, which forces the maximal modulus to
    /// zero directly.
    StrictVertex,
}

impl EscapeTerminal {
    pub fn name(self) -> &'static str {
        match self {
            EscapeTerminal::OutsideWindow => "outside_window",
            EscapeTerminal::StrictVertex => "strict_vertex",
        }
    }
}

/// Shortest escape found for one position: the positions walked,
/// ending on the terminator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapePath {
    pub positions: Vec<usize>,
    pub terminal: EscapeTerminal,
}

/// Outcome of the propagation argument over a k-window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationCertificate {
    pub k: usize,
    /// True when every position escapes; the k-section is then
    /// certified injective.
    pub certified: bool,
    /// Positions with a strict structural certificate.
    pub strict_positions: BTreeSet<usize>,
    /// Escape trace per reached position.
    pub escapes: BTreeMap<usize, EscapePath>,
    /// Positions with no escape (empty iff certified).
    pub unreached: Vec<usize>,
}

/// Runs the propagation argument over positions 1..=k. Requires a
/// structural certificate at every window vertex; the first vertex
/// without one fails the premise.
pub fn propagation_certificate<S: Scalar>(
    op: &Operator<S>,
    g: &LocallyFiniteGraph,
    e: &Enumeration,
    k: usize,
    principle_radius: Option<u32>,
) -> Result<PropagationCertificate, MaxPrincipleError> {
    ensure_exact::<S>("propagation certificate")?;
    assert!(k >= 1, "propagation needs k >= 1");
    if e.len() < k {
        return Err(MaxPrincipleError::WindowTooShort {
            have: e.len(),
            need: k,
        });
    }
    let mut strict_positions = BTreeSet::new();
    for j in 1..=k {
        let vertex = e.vertex(j);
        let cert = check_structural(op, g, vertex, principle_radius)?;
        match cert.status {
            CertificateStatus::StructuralStrict => {
                strict_positions.insert(j);
            }
            CertificateStatus::StructuralEquality => {}
            other => {
                return Err(MaxPrincipleError::PremiseFailed {
                    position: j,
                    vertex: vertex.to_string(),
                    status: other.name().to_string(),
                });
            }
        }
    }
    let mut supports = Vec::with_capacity(k);
    for j in 1..=k {
        supports.push(support_in_window(op, e, j, k)?);
    }
    // reverse edges: reverse[l] lists the rows whose support contains l
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for j in 1..=k {
        for &l in &supports[j - 1].positions {
            reverse[l].push(j);
        }
    }
    let mut terminal: BTreeMap<usize, EscapeTerminal> = BTreeMap::new();
    for j in 1..=k {
        if strict_positions.contains(&j) {
            terminal.insert(j, EscapeTerminal::StrictVertex);
        } else if supports[j - 1].outside {
            terminal.insert(j, EscapeTerminal::OutsideWindow);
        }
    }
    let mut next_hop: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reached: BTreeSet<usize> = terminal.keys().copied().collect();
    let mut queue: VecDeque<usize> = terminal.keys().copied().collect();
    while let Some(l) = queue.pop_front() {
        for &j in &reverse[l] {
            if reached.insert(j) {
                next_hop.insert(j, l);
                queue.push_back(j);
            }
        }
    }
    let mut escapes = BTreeMap::new();
    for j in 1..=k {
        if !reached.contains(&j) {
            continue;
        }
        let mut positions = vec![j];
        let mut at = j;
        while let Some(&next) = next_hop.get(&at) {
            positions.push(next);
            at = next;
        }
        let kind = terminal[&at];
        escapes.insert(
            j,
            EscapePath {
                positions,
                terminal: kind,
            },
        );
    }
    let unreached: Vec<usize> = (1..=k).filter(|j| !reached.contains(j)).collect();
    Ok(PropagationCertificate {
        k,
        certified: unreached.is_empty(),
        strict_positions,
        escapes,
        unreached,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LocallyFiniteGraph;
    use crate::operator::{adjacency, custom_operator, laplacian, laplacian_plus_lambda, Lambda};
    use crate::sections::build_section;
    use num::BigInt;
    use std::str::FromStr;

    type Rat = BigRational;

    fn key(text: &str) -> VertexKey {
        VertexKey::from_str(text).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn laplacian_rows_have_equality_certificates() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        for x in -3..=3 {
            let cert = check_structural(&op, &g, &VertexKey::Int(x), None).unwrap();
            assert_eq!(cert.status, CertificateStatus::StructuralEquality);
            assert_eq!(cert.radius_used, 1);
        }
    }

    #[test]
    fn positive_lambda_upgrades_to_strict() {
        let g = LocallyFiniteGraph::zline();
        let lambda = Lambda::constant(rat(1, 1)).unwrap();
        let op = laplacian_plus_lambda::<Rat>(&g, lambda).unwrap();
        let cert = check_structural(&op, &g, &key("0"), None).unwrap();
        assert_eq!(cert.status, CertificateStatus::StructuralStrict);
    }

    #[test]
    fn adjacency_is_unknown_structurally() {
        let g = LocallyFiniteGraph::regular_tree(3).unwrap();
        let op = adjacency::<Rat>(&g);
        let cert = check_structural(&op, &g, &key("/"), None).unwrap();
        assert_eq!(cert.status, CertificateStatus::Unknown);
    }

    #[test]
    fn declared_principle_radius_widens_the_ball() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        // radius 2 ball is not fully supported by a radius 1 stencil
        let cert = check_structural(&op, &g, &key("0"), Some(2)).unwrap();
        assert_eq!(cert.radius_used, 2);
        assert_eq!(cert.status, CertificateStatus::Unknown);
    }

    #[test]
    fn falsifier_finds_adjacency_witness_at_tree_root() {
        let g = LocallyFiniteGraph::regular_tree(3).unwrap();
        let op = adjacency::<Rat>(&g);
        let witness = falsify(&op, &g, &key("/"), 1000, 42, None)
            .unwrap()
            .expect("adjacency on the tree is falsifiable at the root");
        assert!(verify_witness(&op, &g, &key("/"), &witness, 1).unwrap());
    }

    #[test]
    fn hand_built_adjacency_witness_passes_the_recheck() {
        let g = LocallyFiniteGraph::regular_tree(3).unwrap();
        let op = adjacency::<Rat>(&g);
        let witness = FunctionOnV::from_pairs([
            (key("/"), rat(1, 1)),
            (key("/0"), rat(1, 1)),
            (key("/1"), rat(-1, 2)),
            (key("/2"), rat(-1, 2)),
        ]);
        assert!(verify_witness(&op, &g, &key("/"), &witness, 1).unwrap());
    }

    #[test]
    fn falsifier_respects_structural_certificates() {
        // consistency run: certified vertices admit no witness
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        let found = falsify(&op, &g, &key("0"), 10_000, 42, None).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn falsify_needs_an_off_diagonal() {
        let g = LocallyFiniteGraph::zline();
        let op = custom_operator::<Rat>(
            &g,
            0,
            [(key("0"), vec![(key("0"), rat(1, 1))])],
            None,
        )
        .unwrap();
        assert!(matches!(
            falsify(&op, &g, &key("0"), 10, 1, None),
            Err(MaxPrincipleError::NoOffDiagonal { .. })
        ));
    }

    #[test]
    fn propagation_on_the_line_escapes() {
        let g = LocallyFiniteGraph::zline();
        let op = laplacian::<Rat>(&g).unwrap();
        let e = g.enumerate(&[key("0")], 3).unwrap();
        let cert = propagation_certificate(&op, &g, &e, 3, None).unwrap();
        assert!(cert.certified);
        assert!(cert.strict_positions.is_empty());
        assert_eq!(cert.escapes[&2].positions, vec![2]);
        assert_eq!(cert.escapes[&2].terminal, EscapeTerminal::OutsideWindow);
        assert_eq!(cert.escapes[&1].positions, vec![1, 2]);
    }

    #[test]
    fn propagation_fails_on_an_escape_free_window() {
        let union = LocallyFiniteGraph::disjoint_union(vec![
            LocallyFiniteGraph::explicit(&[("a", "b"), ("b", "c"), ("a", "c")], &[], true)
                .unwrap(),
            LocallyFiniteGraph::directed_ray(),
        ])
        .unwrap();
        let op = laplacian::<Rat>(&union).unwrap();
        let e = union.enumerate(&[key("0:a")], 3).unwrap();
        let cert = propagation_certificate(&op, &union, &e, 3, None).unwrap();
        assert!(!cert.certified);
        assert_eq!(cert.unreached, vec![1, 2, 3]);
    }

    #[test]
    fn strict_windows_certify_without_escapes() {
        let g = LocallyFiniteGraph::zsquare();
        let lambda = Lambda::constant(rat(1, 1)).unwrap();
        let op = laplacian_plus_lambda::<Rat>(&g, lambda).unwrap();
        let e = g.enumerate(&[key("(0,0)")], 9).unwrap();
        let cert = propagation_certificate(&op, &g, &e, 9, None).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.strict_positions.len(), 9);
        for path in cert.escapes.values() {
            assert_eq!(path.terminal, EscapeTerminal::StrictVertex);
            assert_eq!(path.positions.len(), 1);
        }
    }

    #[test]
    fn propagation_premise_failure_names_the_vertex() {
        let g = LocallyFiniteGraph::regular_tree(3).unwrap();
        let op = adjacency::<Rat>(&g);
        let e = g.enumerate(&[key("/")], 4).unwrap();
        match propagation_certificate(&op, &g, &e, 4, None) {
            Err(MaxPrincipleError::PremiseFailed {
                position, vertex, ..
            }) => {
                assert_eq!(position, 1);
                assert_eq!(vertex, "/");
            }
            other => panic!("expected PremiseFailed, got {other:?}"),
        }
    }

    /// Certified propagation implies exact injectivity of the section.
    #[test]
    fn propagation_soundness_against_rank() {
        let families = [
            (LocallyFiniteGraph::zline(), key("0")),
            (LocallyFiniteGraph::zsquare(), key("(0,0)")),
            (LocallyFiniteGraph::regular_tree(3).unwrap(), key("/")),
        ];
        for (g, root) in families {
            let ops = [
                laplacian::<Rat>(&g).unwrap(),
                laplacian_plus_lambda::<Rat>(&g, Lambda::constant(rat(1, 1)).unwrap()).unwrap(),
            ];
            let e = g.enumerate(&[root], 25).unwrap();
            for op in &ops {
                for k in 1..=25 {
                    let cert = propagation_certificate(op, &g, &e, k, None).unwrap();
                    assert!(cert.certified, "k={k} {} {}", op.name(), g.family_name());
                    let injective = build_section(op, &e, k).unwrap().is_injective().unwrap();
                    assert!(injective, "k={k} {} {}", op.name(), g.family_name());
                }
            }
        }
    }

    /// Structural soundness: certified vertices admit no falsification
    /// witness in 1000 seeded trials.
    #[test]
    fn structural_soundness_zline() {
        structural_soundness_family(LocallyFiniteGraph::zline(), key("0"));
    }

    #[test]
    fn structural_soundness_zsquare() {
        structural_soundness_family(LocallyFiniteGraph::zsquare(), key("(0,0)"));
    }

    #[test]
    fn structural_soundness_tree() {
        structural_soundness_family(LocallyFiniteGraph::regular_tree(3).unwrap(), key("/"));
    }

    fn structural_soundness_family(g: LocallyFiniteGraph, root: VertexKey) {
        let ops = [
            laplacian::<Rat>(&g).unwrap(),
            laplacian_plus_lambda::<Rat>(&g, Lambda::constant(rat(2, 3)).unwrap()).unwrap(),
        ];
        let e = g.enumerate(&[root], 50).unwrap();
        for op in &ops {
            for j in 1..=e.len() {
                let v = e.vertex(j);
                let cert = check_structural(op, &g, v, None).unwrap();
                assert!(cert.status.is_structural(), "{} at {v}", op.name());
                let witness = falsify(op, &g, v, 1000, 271828, None).unwrap();
                assert!(witness.is_none(), "{} falsified at {v}", op.name());
            }
        }
    }
}
