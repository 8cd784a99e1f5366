//! Lazily generated locally finite graphs, two-sided balls, and
//! deterministic BFS enumerations of vertex windows.
//!
//! Built-in families are generators: a neighbor query is a pure
//! function of (graph, key) and never materializes more of the graph
//! than the query touches. Connectivity of the infinite families is a
//! documented contract of each constructor, not a computed property;
//! [`LocallyFiniteGraph::window_connected`] only diagnoses the
//! enumerated window.

mod key;

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use key::{KeyParseError, VertexKey};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("{key} is not a vertex of {family}")]
    InvalidKey { key: String, family: String },
    #[error("enumeration needs at least one root")]
    EmptyRoots,
    #[error("duplicate root {0}")]
    DuplicateRoot(String),
    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
}

/// Finite out- and in-neighbor lists of one vertex, each sorted
/// ascending and duplicate-free. Undirected graphs return equal lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    pub out: Vec<VertexKey>,
    pub into: Vec<VertexKey>,
}

impl Adjacency {
    fn symmetric(list: Vec<VertexKey>) -> Self {
        Adjacency {
            out: list.clone(),
            into: list,
        }
    }

    /// Out- and in-neighbors merged, sorted, duplicate-free.
    pub fn symmetrized(&self) -> Vec<VertexKey> {
        let mut all = self.out.clone();
        all.extend(self.into.iter().cloned());
        all.sort();
        all.dedup();
        all
    }
}

/// User-pluggable neighbor generator for custom graphs (library API
/// only; the CLI exposes just the built-in families).
pub trait NeighborSource: Send + Sync {
    /// Neighbor lists of `v`, or `InvalidKey`. Must be pure: identical
    /// inputs give identical lists.
    fn neighbors(&self, v: &VertexKey) -> Result<Adjacency, GraphError>;
}

#[derive(Clone)]
enum GraphKind {
    ZLine,
    ZSquare,
    RegularTree(u32),
    DirectedRay,
    Explicit(Arc<ExplicitGraph>),
    Union(Arc<Vec<LocallyFiniteGraph>>),
    Custom {
        name: Arc<str>,
        source: Arc<dyn NeighborSource>,
    },
}

/// A finite or countably infinite graph given by a pure neighbor
/// generator over [`VertexKey`]s.
#[derive(Clone)]
pub struct LocallyFiniteGraph {
    kind: GraphKind,
    undirected: bool,
    simplicial: bool,
}

impl fmt::Debug for LocallyFiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocallyFiniteGraph({})", self.family_name())
    }
}

#[derive(Debug)]
struct ExplicitGraph {
    out: BTreeMap<VertexKey, Vec<VertexKey>>,
    into: BTreeMap<VertexKey, Vec<VertexKey>>,
}

impl LocallyFiniteGraph {
    /// The integer line with edges between consecutive integers.
    /// Connected, undirected, simplicial, 2-regular.
    pub fn zline() -> Self {
        LocallyFiniteGraph {
            kind: GraphKind::ZLine,
            undirected: true,
            simplicial: true,
        }
    }

    /// The planar square lattice. Connected, undirected, simplicial,
    /// 4-regular.
    pub fn zsquare() -> Self {
        LocallyFiniteGraph {
            kind: GraphKind::ZSquare,
            undirected: true,
            simplicial: true,
        }
    }

    /// The infinite d-regular tree, keyed by root paths. Connected,
    /// undirected, simplicial.
    pub fn regular_tree(degree: u32) -> Result<Self, GraphError> {
        if degree < 2 {
            return Err(GraphError::InvalidFamily(format!(
                "regular tree needs degree >= 2, got {degree}"
            )));
        }
        Ok(LocallyFiniteGraph {
            kind: GraphKind::RegularTree(degree),
            undirected: true,
            simplicial: true,
        })
    }

    /// The directed ray on the nonnegative integers with edges i -> i+1.
    pub fn directed_ray() -> Self {
        LocallyFiniteGraph {
            kind: GraphKind::DirectedRay,
            undirected: false,
            simplicial: true,
        }
    }

    /// Finite graph from an explicit edge list over text labels, plus
    /// optional isolated vertices. Admitted for oracle tests and
    /// negative demos; certificates over finite graphs are window-only.
    pub fn explicit(
        edges: &[(&str, &str)],
        isolated: &[&str],
        undirected: bool,
    ) -> Result<Self, GraphError> {
        let mut out: BTreeMap<VertexKey, Vec<VertexKey>> = BTreeMap::new();
        let mut into: BTreeMap<VertexKey, Vec<VertexKey>> = BTreeMap::new();
        let mut simplicial = true;
        let mut touch = |map: &mut BTreeMap<VertexKey, Vec<VertexKey>>, v: &VertexKey| {
            map.entry(v.clone()).or_default();
        };
        for (a, b) in edges {
            let a = VertexKey::label(*a);
            let b = VertexKey::label(*b);
            if a == b {
                simplicial = false;
            }
            touch(&mut out, &a);
            touch(&mut out, &b);
            touch(&mut into, &a);
            touch(&mut into, &b);
            out.get_mut(&a).unwrap().push(b.clone());
            into.get_mut(&b).unwrap().push(a.clone());
            if undirected && a != b {
                out.get_mut(&b).unwrap().push(a.clone());
                into.get_mut(&a).unwrap().push(b.clone());
            }
        }
        for label in isolated {
            let v = VertexKey::label(*label);
            touch(&mut out, &v);
            touch(&mut into, &v);
        }
        for list in out.values_mut().chain(into.values_mut()) {
            list.sort();
            list.dedup();
        }
        if undirected {
            // loops aside, symmetrization makes both lists equal
            into = out.clone();
        }
        Ok(LocallyFiniteGraph {
            kind: GraphKind::Explicit(Arc::new(ExplicitGraph { out, into })),
            undirected,
            simplicial,
        })
    }

    /// Disjoint union; vertex keys gain a component prefix.
    pub fn disjoint_union(parts: Vec<LocallyFiniteGraph>) -> Result<Self, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::InvalidFamily(
                "disjoint union needs at least one part".to_string(),
            ));
        }
        let undirected = parts.iter().all(|g| g.undirected);
        let simplicial = parts.iter().all(|g| g.simplicial);
        Ok(LocallyFiniteGraph {
            kind: GraphKind::Union(Arc::new(parts)),
            undirected,
            simplicial,
        })
    }

    /// Wraps a user-supplied generator.
    pub fn custom(
        name: &str,
        source: Arc<dyn NeighborSource>,
        undirected: bool,
        simplicial: bool,
    ) -> Self {
        LocallyFiniteGraph {
            kind: GraphKind::Custom {
                name: Arc::from(name),
                source,
            },
            undirected,
            simplicial,
        }
    }

    pub fn family_name(&self) -> String {
        match &self.kind {
            GraphKind::ZLine => "zline".to_string(),
            GraphKind::ZSquare => "zsquare".to_string(),
            GraphKind::RegularTree(d) => format!("tree({d})"),
            GraphKind::DirectedRay => "ray".to_string(),
            GraphKind::Explicit(_) => "explicit".to_string(),
            GraphKind::Union(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.family_name()).collect();
                format!("union({})", names.join(","))
            }
            GraphKind::Custom { name, .. } => format!("custom({name})"),
        }
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    fn invalid(&self, v: &VertexKey) -> GraphError {
        GraphError::InvalidKey {
            key: v.to_string(),
            family: self.family_name(),
        }
    }

    /// Out- and in-neighbor lists of `v`.
    pub fn neighbors(&self, v: &VertexKey) -> Result<Adjacency, GraphError> {
        match &self.kind {
            GraphKind::ZLine => match v {
                VertexKey::Int(n) => Ok(Adjacency::symmetric(vec![
                    VertexKey::Int(n - 1),
                    VertexKey::Int(n + 1),
                ])),
                _ => Err(self.invalid(v)),
            },
            GraphKind::ZSquare => match v {
                VertexKey::Pair(x, y) => {
                    let mut list = vec![
                        VertexKey::Pair(x - 1, *y),
                        VertexKey::Pair(x + 1, *y),
                        VertexKey::Pair(*x, y - 1),
                        VertexKey::Pair(*x, y + 1),
                    ];
                    list.sort();
                    Ok(Adjacency::symmetric(list))
                }
                _ => Err(self.invalid(v)),
            },
            GraphKind::RegularTree(degree) => match v {
                VertexKey::Path(path) => {
                    let d = *degree;
                    let valid = path.iter().enumerate().all(|(i, &step)| {
                        let fanout = if i == 0 { d } else { d - 1 };
                        (step as u32) < fanout
                    });
                    if !valid {
                        return Err(self.invalid(v));
                    }
                    let mut list = Vec::new();
                    let fanout = if path.is_empty() { d } else { d - 1 };
                    if !path.is_empty() {
                        list.push(VertexKey::Path(path[..path.len() - 1].to_vec()));
                    }
                    for child in 0..fanout {
                        let mut next = path.clone();
                        next.push(child as u8);
                        list.push(VertexKey::Path(next));
                    }
                    // parent is shorter, children sort lexicographically
                    Ok(Adjacency::symmetric(list))
                }
                _ => Err(self.invalid(v)),
            },
            GraphKind::DirectedRay => match v {
                VertexKey::Int(n) if *n >= 0 => {
                    let out = vec![VertexKey::Int(n + 1)];
                    let into = if *n > 0 {
                        vec![VertexKey::Int(n - 1)]
                    } else {
                        Vec::new()
                    };
                    Ok(Adjacency { out, into })
                }
                _ => Err(self.invalid(v)),
            },
            GraphKind::Explicit(g) => {
                let out = g.out.get(v).ok_or_else(|| self.invalid(v))?;
                let into = g.into.get(v).ok_or_else(|| self.invalid(v))?;
                Ok(Adjacency {
                    out: out.clone(),
                    into: into.clone(),
                })
            }
            GraphKind::Union(parts) => match v {
                VertexKey::Part(component, inner) => {
                    let part = parts.get(*component).ok_or_else(|| self.invalid(v))?;
                    let adj = part.neighbors(inner).map_err(|_| self.invalid(v))?;
                    let wrap = |list: Vec<VertexKey>| {
                        list.into_iter()
                            .map(|w| VertexKey::part(*component, w))
                            .collect()
                    };
                    Ok(Adjacency {
                        out: wrap(adj.out),
                        into: wrap(adj.into),
                    })
                }
                _ => Err(self.invalid(v)),
            },
            GraphKind::Custom { source, .. } => source.neighbors(v),
        }
    }

    /// Number of adjacent vertices; undirected graphs only.
    pub fn degree(&self, v: &VertexKey) -> Result<usize, OperatorPrecondition> {
        if !self.undirected {
            return Err(OperatorPrecondition::DirectedGraph {
                family: self.family_name(),
            });
        }
        Ok(self.neighbors(v)?.out.len())
    }

    /// The two-sided ball: `v` together with endpoints of paths of
    /// length at most `n` starting at `v` and start points of paths of
    /// length at most `n` ending at `v`. For undirected graphs this is
    /// the ordinary ball of radius `n`.
    pub fn ball(&self, v: &VertexKey, n: u32) -> Result<BTreeSet<VertexKey>, GraphError> {
        self.neighbors(v)?;
        let mut result = BTreeSet::new();
        result.insert(v.clone());
        for forward in [true, false] {
            let mut seen = BTreeSet::new();
            seen.insert(v.clone());
            let mut frontier = vec![v.clone()];
            for _ in 0..n {
                let mut next = Vec::new();
                for u in &frontier {
                    let adj = self.neighbors(u)?;
                    let step = if forward { adj.out } else { adj.into };
                    for w in step {
                        if seen.insert(w.clone()) {
                            next.push(w);
                        }
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
            result.extend(seen);
        }
        Ok(result)
    }

    /// Deterministic BFS enumeration of (up to) the first `k` vertices
    /// reachable from `roots` under symmetrized adjacency. Roots seed
    /// layer 0 in the given order; later layers are emitted in
    /// ascending key order. A window shorter than `k` is reported via
    /// [`Enumeration::exhausted`], not as an error.
    pub fn enumerate(&self, roots: &[VertexKey], k: usize) -> Result<Enumeration, GraphError> {
        if roots.is_empty() {
            return Err(GraphError::EmptyRoots);
        }
        let mut seen: BTreeSet<VertexKey> = BTreeSet::new();
        for r in roots {
            self.neighbors(r)?;
            if !seen.insert(r.clone()) {
                return Err(GraphError::DuplicateRoot(r.to_string()));
            }
        }
        let mut order: Vec<VertexKey> = Vec::new();
        let mut layers: Vec<u32> = Vec::new();
        let mut current: Vec<VertexKey> = roots.to_vec();
        let mut layer = 0u32;
        while !current.is_empty() && order.len() < k {
            for v in &current {
                if order.len() == k {
                    break;
                }
                order.push(v.clone());
                layers.push(layer);
            }
            let mut next: BTreeSet<VertexKey> = BTreeSet::new();
            for v in &current {
                for w in self.neighbors(v)?.symmetrized() {
                    if !seen.contains(&w) {
                        next.insert(w);
                    }
                }
            }
            seen.extend(next.iter().cloned());
            current = next.into_iter().collect();
            layer += 1;
        }
        let exhausted = order.len() < k;
        let index = order
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i + 1))
            .collect();
        Ok(Enumeration {
            roots: roots.to_vec(),
            order,
            layers,
            index,
            exhausted,
        })
    }

    /// Window diagnostic: do the enumerated vertices form a single
    /// component under symmetrized adjacency restricted to the window?
    pub fn window_connected(&self, e: &Enumeration) -> Result<bool, GraphError> {
        if e.order.len() <= 1 {
            return Ok(true);
        }
        let window: BTreeSet<&VertexKey> = e.order.iter().collect();
        let mut reached: BTreeSet<&VertexKey> = BTreeSet::new();
        let mut stack = vec![&e.order[0]];
        reached.insert(&e.order[0]);
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v)?.symmetrized() {
                if let Some(&inside) = window.get(&w) {
                    if reached.insert(inside) {
                        stack.push(inside);
                    }
                }
            }
        }
        Ok(reached.len() == e.order.len())
    }
}

/// Precondition failures shared by degree queries and the built-in
/// operators.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OperatorPrecondition {
    #[error("operation requires an undirected graph, got {family}")]
    DirectedGraph { family: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// BFS-ordered bijection between positions 1..=len and a vertex
/// window. Positions are 1-based throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    roots: Vec<VertexKey>,
    order: Vec<VertexKey>,
    layers: Vec<u32>,
    index: BTreeMap<VertexKey, usize>,
    exhausted: bool,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn roots(&self) -> &[VertexKey] {
        &self.roots
    }

    pub fn order(&self) -> &[VertexKey] {
        &self.order
    }

    /// Vertex at 1-based position `j`; panics when out of range.
    pub fn vertex(&self, j: usize) -> &VertexKey {
        &self.order[j - 1]
    }

    /// 1-based position of `v` inside the window.
    pub fn position_of(&self, v: &VertexKey) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// BFS layer of the vertex at 1-based position `j`.
    pub fn layer(&self, j: usize) -> u32 {
        self.layers[j - 1]
    }

    /// True when the graph ran out of reachable vertices before the
    /// requested window length.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}
