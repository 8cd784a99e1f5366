//! Canonical vertex labels with a total order per graph family.
//!
//! The order is what makes BFS enumerations reproducible: integer keys
//! sort numerically, pairs lexicographically, tree paths by (length,
//! lexicographic), labels lexicographically, and union keys by
//! (component, inner key).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse vertex key from {text:?}: {reason}")]
pub struct KeyParseError {
    pub text: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexKey {
    /// Integer coordinate (line and ray families).
    Int(i64),
    /// Planar lattice coordinate.
    Pair(i64, i64),
    /// Path from the root of a tree, as child indices.
    Path(Vec<u8>),
    /// Free-form label (explicit finite graphs).
    Label(String),
    /// Vertex of a disjoint-union component.
    Part(usize, Box<VertexKey>),
}

impl VertexKey {
    pub fn label(text: impl Into<String>) -> Self {
        VertexKey::Label(text.into())
    }

    pub fn part(component: usize, inner: VertexKey) -> Self {
        VertexKey::Part(component, Box::new(inner))
    }

    fn variant_rank(&self) -> u8 {
        match self {
            VertexKey::Int(_) => 0,
            VertexKey::Pair(_, _) => 1,
            VertexKey::Path(_) => 2,
            VertexKey::Label(_) => 3,
            VertexKey::Part(_, _) => 4,
        }
    }
}

impl Ord for VertexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        use VertexKey::*;
        match (self, other) {
            (Int(a), Int(b)) => a.cmp(b),
            (Pair(ax, ay), Pair(bx, by)) => (ax, ay).cmp(&(bx, by)),
            // tree keys: shorter paths (closer to the root) first
            (Path(a), Path(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Label(a), Label(b)) => a.cmp(b),
            (Part(ai, ak), Part(bi, bk)) => ai.cmp(bi).then_with(|| ak.cmp(bk)),
            _ => self.variant_rank().cmp(&other.variant_rank()),
        }
    }
}

impl PartialOrd for VertexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKey::Int(n) => write!(f, "{n}"),
            VertexKey::Pair(x, y) => write!(f, "({x},{y})"),
            VertexKey::Path(path) => {
                if path.is_empty() {
                    write!(f, "/")
                } else {
                    for step in path {
                        write!(f, "/{step}")?;
                    }
                    Ok(())
                }
            }
            VertexKey::Label(text) => write!(f, "{text}"),
            VertexKey::Part(component, inner) => write!(f, "{component}:{inner}"),
        }
    }
}

impl FromStr for VertexKey {
    type Err = KeyParseError;

    /// Inverse of `Display`: `5`, `(2,-1)`, `/0/1`, `label`, `0:inner`.
    fn from_str(s: &str) -> Result<Self, KeyParseError> {
        let s = s.trim();
        let err = |reason: &str| KeyParseError {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty key"));
        }
        if let Some((head, tail)) = s.split_once(':') {
            let component: usize = head
                .trim()
                .parse()
                .map_err(|_| err("component index before ':' must be an unsigned integer"))?;
            let inner = VertexKey::from_str(tail)?;
            return Ok(VertexKey::part(component, inner));
        }
        if let Some(rest) = s.strip_prefix('(') {
            let body = rest
                .strip_suffix(')')
                .ok_or_else(|| err("missing closing parenthesis"))?;
            let (x, y) = body
                .split_once(',')
                .ok_or_else(|| err("pair key needs two comma-separated integers"))?;
            let x = x.trim().parse().map_err(|_| err("bad pair coordinate"))?;
            let y = y.trim().parse().map_err(|_| err("bad pair coordinate"))?;
            return Ok(VertexKey::Pair(x, y));
        }
        if let Some(rest) = s.strip_prefix('/') {
            if rest.is_empty() {
                return Ok(VertexKey::Path(Vec::new()));
            }
            let mut path = Vec::new();
            for step in rest.split('/') {
                let idx: u8 = step
                    .parse()
                    .map_err(|_| err("tree path steps must be small unsigned integers"))?;
                path.push(idx);
            }
            return Ok(VertexKey::Path(path));
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(VertexKey::Int(n));
        }
        if s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
        {
            Ok(VertexKey::Label(s.to_string()))
        } else {
            Err(err(
                "labels may contain only ASCII alphanumerics, '_', '-', '.'",
            ))
        }
    }
}
