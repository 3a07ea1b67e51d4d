use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{lift, LWGraph, LiftedGraph, SparseDigraph};
use crate::braid::SimpleBraid;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub n: usize,
    /// Window length; `1` is the base graph.
    pub k: usize,
    /// Removed patterns as factor lists of permutation images.
    pub removed_patterns: Vec<Vec<SimpleBraid>>,
    pub vertex_count: usize,
}

/// On-disk form of a base or lifted graph: a header and the edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCache {
    pub header: CacheHeader,
    pub edges: Vec<(u32, u32)>,
}

impl GraphCache {
    pub fn from_graph(g: &LWGraph) -> Self {
        GraphCache {
            header: CacheHeader { n: g.n(), k: 1, removed_patterns: vec![], vertex_count: g.vertex_count() },
            edges: g.adjacency().edges().collect(),
        }
    }

    pub fn from_lift(l: &LiftedGraph) -> Self {
        GraphCache {
            header: CacheHeader {
                n: l.n(),
                k: l.k(),
                removed_patterns: l.removed_patterns().to_vec(),
                vertex_count: l.vertex_count(),
            },
            edges: l.adjacency().edges().collect(),
        }
    }

    pub fn write_to(&self, w: impl Write) -> Result<()> {
        serde_json::to_writer(w, self).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn read_from(r: impl Read) -> Result<Self> {
        serde_json::from_reader(r).map_err(|e| Error::Invalid(format!("bad graph cache: {e}")))
    }

    fn adjacency(&self) -> Result<SparseDigraph> {
        let v = self.header.vertex_count;
        if self.edges.iter().any(|&(a, b)| a as usize >= v || b as usize >= v) {
            return Err(Error::Invalid("cached edge out of range".into()));
        }
        Ok(SparseDigraph::from_edges(v, &self.edges))
    }

    /// Restore the base graph; the cache must describe `k = 1` with no removals.
    pub fn to_graph(&self) -> Result<LWGraph> {
        if self.header.k != 1 || !self.header.removed_patterns.is_empty() {
            return Err(Error::Invalid("cache holds a lifted graph".into()));
        }
        LWGraph::from_parts(self.header.n, self.adjacency()?)
    }

    /// Restore a lifted graph over `g`, checking the cached edges against a rebuild.
    pub fn to_lift(&self, g: &LWGraph, cap: usize) -> Result<LiftedGraph> {
        if g.n() != self.header.n {
            return Err(Error::StrandMismatch(g.n(), self.header.n));
        }
        let mut l = lift(g, self.header.k, cap)?;
        for p in &self.header.removed_patterns {
            l = l.forbid(g, p)?;
        }
        if l.vertex_count() != self.header.vertex_count || *l.adjacency() != self.adjacency()? {
            return Err(Error::Invalid("graph cache does not match a rebuild".into()));
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::x_b;
    use crate::graph::{build_graph, DEFAULT_LIFT_CAP};

    #[test]
    fn round_trip() {
        let g = build_graph(4).unwrap();
        let c = GraphCache::from_graph(&g);
        let mut buf = vec![];
        c.write_to(&mut buf).unwrap();
        let back = GraphCache::read_from(buf.as_slice()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_graph().unwrap().edge_count(), 164);

        let l = lift(&g, 3, DEFAULT_LIFT_CAP).unwrap().forbid(&g, x_b(4).unwrap().factors()).unwrap();
        let c = GraphCache::from_lift(&l);
        let s = serde_json::to_string(&c).unwrap();
        let back: GraphCache = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_lift(&g, DEFAULT_LIFT_CAP).unwrap().edge_count(), l.edge_count());
        assert!(back.to_graph().is_err());
    }

    #[test]
    fn tampered_cache_is_rejected() {
        let g = build_graph(3).unwrap();
        let mut c = GraphCache::from_graph(&g);
        c.edges.pop();
        assert!(c.to_graph().is_err());
    }
}
