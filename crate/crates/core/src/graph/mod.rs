//! Undirected and directed graph values over at most 64 vertices.
//!
//! Vertices carry a stable external [`VertexId`] (what JSON files and words
//! talk about) and a dense internal index `0..n` (what the algorithms use).
//! The vertex order given at construction is kept and drives every
//! deterministic tie-break in the crate.

pub mod bits;
mod digraph;
mod induced;
pub mod io;
mod iso;
pub(crate) mod reach;

use std::collections::BTreeMap;
use std::fmt;

pub use bits::Bits;
use bits::bit;
pub use digraph::Digraph;
pub use induced::{contains_induced, Embedding};
pub use iso::{are_isomorphic, canonical_form, digraph_isomorphism, CanonicalForm, CANONICAL_MAX_VERTICES};
pub use reach::{find_shortcut, is_acyclic, is_semi_transitive, SemiTransitivity, ShortcutWitness};

use crate::error::{Error, Result};

/// External vertex identifier.
pub type VertexId = u32;

/// Hard capacity of the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<u64>,
    names: BTreeMap<VertexId, String>,
}

impl Graph {
    /// Edgeless graph on vertices with ids `0..n`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_ids((0..n as VertexId).collect())
    }

    /// Edgeless graph on the given ids, in the given order.
    pub fn with_ids(ids: Vec<VertexId>) -> Result<Self> {
        if ids.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { got: ids.len(), max: MAX_VERTICES });
        }
        let mut seen = std::collections::HashSet::with_capacity(ids.len());
        for &id in &ids {
            if !seen.insert(id) {
                return Err(Error::DuplicateVertex(id));
            }
        }
        let n = ids.len();
        Ok(Graph { ids, adj: vec![0; n], names: BTreeMap::new() })
    }

    /// Graph on ids `0..n` with edges given by index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph on the given ids with edges given as id pairs.
    pub fn from_id_edges(ids: Vec<VertexId>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::with_ids(ids)?;
        for &(a, b) in edges {
            let u = g.index_of(a).ok_or(Error::UnknownVertex(a))?;
            let v = g.index_of(b).ok_or(Error::UnknownVertex(b))?;
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `u -- v` (by index). Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n {
            return Err(Error::UnknownVertex(u as VertexId));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v as VertexId));
        }
        if u == v {
            return Err(Error::Loop(self.ids[u]));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Bitmask of all vertex indices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        bits::low_mask(self.n())
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn adjacency_rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in Bits(self.adj[u] & !bits::low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    #[inline]
    pub fn id(&self, u: usize) -> VertexId {
        self.ids[u]
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn name(&self, u: usize) -> Option<&str> {
        self.names.get(&self.ids[u]).map(String::as_str)
    }

    pub fn names(&self) -> &BTreeMap<VertexId, String> {
        &self.names
    }

    pub fn set_name(&mut self, u: usize, name: impl Into<String>) {
        self.names.insert(self.ids[u], name.into());
    }

    /// Human-facing label: the name if present, else the id.
    pub fn label(&self, u: usize) -> String {
        match self.name(u) {
            Some(s) => s.to_string(),
            None => self.ids[u].to_string(),
        }
    }

    /// Induced subgraph on the given vertex indices. Ids and names are kept;
    /// vertex order follows ascending index.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| Bits(self.adj[v] & mask).fold(0u64, |acc, w| acc | bit(pos[w])))
            .collect();
        let ids: Vec<VertexId> = keep.iter().map(|&v| self.ids[v]).collect();
        let names = ids
            .iter()
            .filter_map(|id| self.names.get(id).map(|s| (*id, s.clone())))
            .collect();
        Graph { ids, adj, names }
    }

    /// Induced subgraph on a set of vertex ids.
    pub fn induced_subgraph(&self, ids: &[VertexId]) -> Result<Graph> {
        let mut mask = 0u64;
        for &id in ids {
            mask |= bit(self.index_of(id).ok_or(Error::UnknownVertex(id))?);
        }
        Ok(self.induced(mask))
    }

    /// Copy with vertex `v` deleted.
    pub fn without_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertex_mask() & !bit(v))
    }

    /// Relabels so that old vertex `u` lands at index `perm[u]`; ids travel
    /// with their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length");
        let mut ids = vec![0; n];
        let mut adj = vec![0u64; n];
        for u in 0..n {
            ids[perm[u]] = self.ids[u];
            adj[perm[u]] = Bits(self.adj[u]).fold(0, |acc, w| acc | bit(perm[w]));
        }
        Graph { ids, adj, names: self.names.clone() }
    }

    /// Connected components as vertex masks, ordered by lowest member.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(VertexId, VertexId)> =
            self.edges().into_iter().map(|(u, v)| (self.ids[u], self.ids[v])).collect();
        f.debug_struct("Graph").field("vertices", &self.ids).field("edges", &edges).finish()
    }
}
