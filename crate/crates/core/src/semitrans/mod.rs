//! Semi-transitive orientations: partial orientations, forced-completion
//! propagation, a branching solver and a checker for hand-written branching
//! proofs.

mod derive;
mod propagate;
mod script;
mod solver;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::bits::bit;
use crate::graph::{Digraph, Graph};

pub use derive::derive_script;
pub use propagate::{propagate, Contradiction, Pattern, PatternKind, Propagator};
pub use script::{infer_labeling, parse_script, replay_script, BranchScript, Label, Labeling, ProofReport, ScriptOp, StepOutcome, Verdict};
pub use solver::{
    count_semi_transitive, find_semi_transitive, semi_transitive_orientation, SearchMode, SearchOutcome,
    MAX_SOLVER_EDGES,
};

/// State of one edge, relative to its endpoints in ascending index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeState {
    Undecided,
    /// Lower index to higher index.
    Forward,
    Backward,
}

/// An orientation of some of the edges of a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialOrientation {
    graph: Graph,
    edges: Vec<(usize, usize)>,
    state: Vec<EdgeState>,
    /// Decided arcs as out-rows.
    out: Vec<u64>,
}

/// Orienting an edge against its current decided direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub edge: (usize, usize),
}

impl PartialOrientation {
    pub fn new(graph: Graph) -> Self {
        let edges = graph.edges();
        let n = graph.n();
        PartialOrientation { state: vec![EdgeState::Undecided; edges.len()], edges, out: vec![0; n], graph }
    }

    pub fn from_digraph(d: &Digraph) -> Self {
        let mut p = PartialOrientation::new(d.underlying().clone());
        for (u, v) in d.arcs() {
            p.orient(u, v).expect("fresh orientation");
        }
        p
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Edges in lexicographic order, `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn states(&self) -> &[EdgeState] {
        &self.state
    }

    pub fn state(&self, e: usize) -> EdgeState {
        self.state[e]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Decided arcs, one out-row per vertex.
    pub fn decided_rows(&self) -> &[u64] {
        &self.out
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] & bit(v) != 0
    }

    pub fn undecided_count(&self) -> usize {
        self.state.iter().filter(|s| **s == EdgeState::Undecided).count()
    }

    pub fn is_total(&self) -> bool {
        self.undecided_count() == 0
    }

    /// Decides `u -> v`. Returns whether anything changed.
    pub fn orient(&mut self, u: usize, v: usize) -> std::result::Result<bool, Conflict> {
        let e = self.edge_index(u, v).expect("orient: not an edge");
        let want = if u < v { EdgeState::Forward } else { EdgeState::Backward };
        match self.state[e] {
            EdgeState::Undecided => {
                self.state[e] = want;
                self.out[u] |= bit(v);
                Ok(true)
            }
            s if s == want => Ok(false),
            _ => Err(Conflict { edge: (u, v) }),
        }
    }

    /// Checked variant of [`orient`](Self::orient) for external input.
    pub fn orient_checked(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.graph.n() || v >= self.graph.n() || !self.graph.adjacent(u, v) {
            return Err(Error::Parse(format!("{}-{} is not an edge", self.label(u), self.label(v))));
        }
        self.orient(u, v).map_err(|_| Error::Parse(format!("{}-{} is already oriented the other way", self.label(u), self.label(v))))
    }

    pub(crate) fn set_state(&mut self, e: usize, s: EdgeState) -> std::result::Result<bool, Conflict> {
        let (a, b) = self.edges[e];
        match s {
            EdgeState::Undecided => Ok(false),
            EdgeState::Forward => self.orient(a, b),
            EdgeState::Backward => self.orient(b, a),
        }
    }

    /// The total orientation, if every edge is decided.
    pub fn to_digraph(&self) -> Option<Digraph> {
        self.is_total().then(|| Digraph::from_rows_unchecked(self.graph.clone(), self.out.clone()))
    }

    fn label(&self, u: usize) -> String {
        if u < self.graph.n() {
            self.graph.label(u)
        } else {
            format!("#{u}")
        }
    }
}

impl std::fmt::Debug for PartialOrientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut arcs = Vec::new();
        let mut open = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (self.graph.id(u), self.graph.id(v));
            match self.state[e] {
                EdgeState::Forward => arcs.push((a, b)),
                EdgeState::Backward => arcs.push((b, a)),
                EdgeState::Undecided => open.push((a, b)),
            }
        }
        f.debug_struct("PartialOrientation").field("arcs", &arcs).field("undecided", &open).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_digraph() {
        let d = Digraph::from_id_arcs(vec![0, 1, 2], &[(2, 0), (0, 1), (2, 1)]).unwrap();
        let p = PartialOrientation::from_digraph(&d);
        assert!(p.is_total());
        assert_eq!(p.state(p.edge_index(0, 2).unwrap()), EdgeState::Backward);
        assert_eq!(p.to_digraph().unwrap(), d);
    }

    #[test]
    fn conflicting_orientation() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut p = PartialOrientation::new(g);
        assert_eq!(p.orient(1, 0), Ok(true));
        assert_eq!(p.orient(1, 0), Ok(false));
        assert_eq!(p.orient(0, 1), Err(Conflict { edge: (0, 1) }));
        assert!(p.to_digraph().is_some());
    }
}
