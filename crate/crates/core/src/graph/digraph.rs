use std::fmt;

use super::bits::{bit, Bits};
use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// A total orientation of a [`Graph`]: exactly one arc per edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    graph: Graph,
    out: Vec<u64>,
}

impl Digraph {
    /// Builds the digraph on `graph`'s vertex set whose arcs are the given
    /// index pairs. The underlying edge set is taken from the arcs, so any
    /// edges already present in `graph` that are not covered are an error.
    pub fn from_arcs(graph: Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = graph.n();
        let mut out = vec![0u64; n];
        let mut under = graph.clone();
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(u.max(v) as VertexId));
            }
            if out[v] & bit(u) != 0 {
                return Err(Error::Parse(format!(
                    "both orientations given for edge {}--{}",
                    graph.id(u),
                    graph.id(v)
                )));
            }
            under.add_edge(u, v)?;
            out[u] |= bit(v);
        }
        for (u, v) in under.edges() {
            if out[u] & bit(v) == 0 && out[v] & bit(u) == 0 {
                return Err(Error::Parse(format!(
                    "edge {}--{} has no orientation",
                    graph.id(u),
                    graph.id(v)
                )));
            }
        }
        Ok(Digraph { graph: under, out })
    }

    /// Arcs given as id pairs over the listed vertex ids.
    pub fn from_id_arcs(ids: Vec<VertexId>, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let g = Graph::with_ids(ids)?;
        let mut idx = Vec::with_capacity(arcs.len());
        for &(a, b) in arcs {
            let u = g.index_of(a).ok_or(Error::UnknownVertex(a))?;
            let v = g.index_of(b).ok_or(Error::UnknownVertex(b))?;
            idx.push((u, v));
        }
        Self::from_arcs(g, &idx)
    }

    /// Orients every edge of `graph` with `forward(u, v)` deciding `u -> v`
    /// (called with `u < v`).
    pub fn orient_with(graph: &Graph, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = vec![0u64; graph.n()];
        for (u, v) in graph.edges() {
            if forward(u, v) {
                out[u] |= bit(v);
            } else {
                out[v] |= bit(u);
            }
        }
        Digraph { graph: graph.clone(), out }
    }

    /// Trusted constructor for internal search code: `out` must orient
    /// exactly the edges of `graph`.
    pub(crate) fn from_rows_unchecked(graph: Graph, out: Vec<u64>) -> Self {
        debug_assert!((0..graph.n()).all(|u| {
            let inn = (0..graph.n()).filter(|&w| out[w] & bit(u) != 0).fold(0u64, |a, w| a | bit(w));
            out[u] | inn == graph.neighbors(u) && out[u] & inn == 0
        }));
        Digraph { graph, out }
    }

    pub fn underlying(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] & bit(v) != 0
    }

    #[inline]
    pub fn out_neighbors(&self, u: usize) -> u64 {
        self.out[u]
    }

    #[inline]
    pub fn in_neighbors(&self, u: usize) -> u64 {
        self.graph.neighbors(u) & !self.out[u]
    }

    pub fn out_rows(&self) -> &[u64] {
        &self.out
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Arcs as index pairs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n()).flat_map(|u| Bits(self.out[u]).map(move |v| (u, v))).collect()
    }

    /// Arcs as id pairs in lexicographic index order.
    pub fn id_arcs(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs().into_iter().map(|(u, v)| (self.graph.id(u), self.graph.id(v))).collect()
    }

    /// Every arc flipped.
    pub fn reversed(&self) -> Digraph {
        let out = (0..self.n()).map(|u| self.in_neighbors(u)).collect();
        Digraph { graph: self.graph.clone(), out }
    }

    /// Induced sub-digraph on a vertex mask, vertices in ascending index order.
    pub fn induced(&self, mask: u64) -> Digraph {
        let graph = self.graph.induced(mask);
        let keep: Vec<usize> = Bits(mask & self.graph.vertex_mask()).collect();
        let mut pos = [0usize; super::MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let out = keep
            .iter()
            .map(|&v| Bits(self.out[v] & mask).fold(0u64, |acc, w| acc | bit(pos[w])))
            .collect();
        Digraph { graph, out }
    }

    /// Relabels so that old vertex `u` lands at index `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        let graph = self.graph.permuted(perm);
        let mut out = vec![0u64; self.n()];
        for u in 0..self.n() {
            out[perm[u]] = Bits(self.out[u]).fold(0, |acc, w| acc | bit(perm[w]));
        }
        Digraph { graph, out }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.graph.ids())
            .field("arcs", &self.id_arcs())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_arcs_validates_orientation() {
        let g = Graph::new(3).unwrap();
        let d = Digraph::from_arcs(g.clone(), &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.underlying().edge_count(), 2);
        assert!(Digraph::from_arcs(g.clone(), &[(0, 1), (1, 0)]).is_err());

        let mut tri = g;
        tri.add_edge(0, 2).unwrap();
        assert!(Digraph::from_arcs(tri, &[(0, 1)]).is_err());
    }

    #[test]
    fn reverse_and_induce() {
        let d = Digraph::from_id_arcs(vec![1, 2, 3], &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let r = d.reversed();
        assert!(r.has_arc(2, 0));
        assert_eq!(r.reversed(), d);
        let sub = d.induced(0b101);
        assert_eq!(sub.id_arcs(), vec![(1, 3)]);
    }
}
