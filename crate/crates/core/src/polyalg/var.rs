use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// A variable of the graph-pair encoding. Indices are 1-based; edge endpoints
/// are stored smaller first.
///
/// The derived order is the variable priority of the default term order:
/// vertices, then G-edges, then H-edges, each lexicographic in its indices.
/// Smaller variables are more significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Vertex(u16, u16),
    EdgeG(u16, u16),
    EdgeH(u16, u16),
}

impl VarId {
    pub fn x(g: usize, h: usize) -> Self {
        VarId::Vertex(g as u16, h as u16)
    }

    pub fn edge_g(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loop edge");
        VarId::EdgeG(a.min(b) as u16, a.max(b) as u16)
    }

    pub fn edge_h(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loop edge");
        VarId::EdgeH(a.min(b) as u16, a.max(b) as u16)
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, VarId::Vertex(..))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prefix, a, b) = match *self {
            VarId::Vertex(a, b) => ("x_", a, b),
            VarId::EdgeG(a, b) => ("e_g", a, b),
            VarId::EdgeH(a, b) => ("e_h", a, b),
        };
        if a < 10 && b < 10 {
            write!(f, "{prefix}{a}{b}")
        } else {
            write!(f, "{prefix}{a}_{b}")
        }
    }
}

impl FromStr for VarId {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::Parse(s.to_string());
        let (kind, rest) = if let Some(r) = s.strip_prefix("x_") {
            (0, r)
        } else if let Some(r) = s.strip_prefix("e_g") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("e_h") {
            (2, r)
        } else {
            return Err(bad());
        };
        let (a, b): (u16, u16) = match rest.split_once('_') {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None if rest.len() == 2 && rest.bytes().all(|c| c.is_ascii_digit()) => {
                ((rest.as_bytes()[0] - b'0') as u16, (rest.as_bytes()[1] - b'0') as u16)
            }
            None => return Err(bad()),
        };
        if a == 0 || b == 0 || (kind > 0 && a == b) {
            return Err(bad());
        }
        Ok(match kind {
            0 => VarId::Vertex(a, b),
            1 => VarId::EdgeG(a.min(b), a.max(b)),
            _ => VarId::EdgeH(a.min(b), a.max(b)),
        })
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sizes of the two graphs. Both dominators are vertex 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphParams {
    pub n_g: usize,
    pub n_h: usize,
}

impl GraphParams {
    pub fn new(n_g: usize, n_h: usize) -> Result<Self, PolyError> {
        if n_g == 0 || n_h == 0 {
            return Err(PolyError::InvalidParams(format!("graph sizes must be positive, got ({n_g}, {n_h})")));
        }
        if n_g > 64 || n_h > 64 {
            return Err(PolyError::InvalidParams(format!("graph sizes above 64 are not supported: ({n_g}, {n_h})")));
        }
        Ok(GraphParams { n_g, n_h })
    }

    /// Degree of the ρ-certificate, `n_G + n_H − 1`.
    pub fn d(&self) -> usize {
        self.n_g + self.n_h - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n_g).flat_map(move |g| (1..=self.n_h).map(move |h| (g, h)))
    }

    pub fn g_edges(&self) -> impl Iterator<Item = VarId> + '_ {
        pairs(self.n_g).map(|(a, b)| VarId::edge_g(a, b))
    }

    pub fn h_edges(&self) -> impl Iterator<Item = VarId> + '_ {
        pairs(self.n_h).map(|(a, b)| VarId::edge_h(a, b))
    }

    /// Every variable in priority order.
    pub fn variables(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self.vertices().map(|(g, h)| VarId::x(g, h)).collect();
        v.extend(self.g_edges());
        v.extend(self.h_edges());
        v
    }

    /// Edges not forced by the dominator constraints.
    pub fn free_edges(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = pairs(self.n_g).filter(|&(a, _)| a != 1).map(|(a, b)| VarId::edge_g(a, b)).collect();
        v.extend(pairs(self.n_h).filter(|&(a, _)| a != 1).map(|(a, b)| VarId::edge_h(a, b)));
        v
    }

    /// Vertices sharing a row or column with `(g, h)`, including itself.
    pub fn cross(&self, g: usize, h: usize) -> Vec<(usize, usize)> {
        self.vertices().filter(|&(a, b)| a == g || b == h).collect()
    }
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
}
