//! Forced completions.
//!
//! Local rules work on small induced patterns: triangles, chordless 4-cycles
//! and 4-cycles with exactly one chord. For each pattern the semi-transitive
//! orientations of the induced subgraph are tabulated once; an edge is forced
//! when every tabulated orientation that agrees with the decided edges orients
//! it the same way. Semi-transitivity is inherited by induced subgraphs, so
//! the rule is sound, and it reproduces the hand rules for 3- and 4-cycles.
//! Four vertices inducing K4 are skipped since every acyclic orientation of
//! K4 is transitive and the triangle rules already cover it.
//!
//! Global rules run on the decided sub-digraph: a directed cycle or a
//! shortcut whose offending pair is non-adjacent is a contradiction, and an
//! undecided edge `x-y` with `x` already reaching `y` must become `x -> y`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{EdgeState, PartialOrientation};
use crate::graph::bits::{bit, Bits};
use crate::graph::reach::{descendants, find_cycle, shortcut_in, shortcut_pair, topo_order, transpose};
use crate::graph::{Graph, ShortcutWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contradiction {
    /// No semi-transitive orientation of the induced subgraph on these
    /// vertices agrees with the decided edges.
    NoCompletion { vertices: Vec<usize> },
    Cycle { cycle: Vec<usize> },
    Shortcut { witness: ShortcutWitness },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PatternKind {
    Triangle,
    /// Chordless 4-cycle.
    Square,
    /// 4-cycle with one chord.
    Diamond,
}

#[derive(Clone, Debug)]
pub struct Pattern {
    pub kind: PatternKind,
    /// Ascending vertex indices.
    pub vertices: Vec<usize>,
    /// Edge indices (into [`PartialOrientation::edges`]) of the induced subgraph.
    pub edges: Vec<usize>,
    /// Allowed orientations; bit `i` set means `edges[i]` is `Forward`.
    pub allowed: Vec<u16>,
}

impl Pattern {
    /// Current decided mask and value mask over the pattern's edges.
    fn observe(&self, p: &PartialOrientation) -> (u16, u16) {
        let mut decided = 0u16;
        let mut value = 0u16;
        for (i, &e) in self.edges.iter().enumerate() {
            match p.state(e) {
                EdgeState::Undecided => {}
                EdgeState::Forward => {
                    decided |= 1 << i;
                    value |= 1 << i;
                }
                EdgeState::Backward => decided |= 1 << i,
            }
        }
        (decided, value)
    }

    /// Orientations consistent with `p`.
    pub fn consistent<'a>(&'a self, p: &PartialOrientation) -> impl Iterator<Item = u16> + 'a {
        let (decided, value) = self.observe(p);
        self.allowed.iter().copied().filter(move |m| m & decided == value)
    }
}

/// Semi-transitive orientations of the subgraph induced on `vertices`
/// (ascending), as masks over its edges in lexicographic order.
pub(crate) fn local_completions(g: &Graph, vertices: &[usize]) -> (Vec<(usize, usize)>, Vec<u16>) {
    let k = vertices.len();
    let mut local = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if g.adjacent(vertices[i], vertices[j]) {
                local.push((i, j));
            }
        }
    }
    assert!(local.len() <= 16, "pattern too large");
    let mut allowed = Vec::new();
    for mask in 0u32..(1 << local.len()) {
        let mut out = vec![0u64; k];
        for (t, &(i, j)) in local.iter().enumerate() {
            if mask & (1 << t) != 0 {
                out[i] |= bit(j);
            } else {
                out[j] |= bit(i);
            }
        }
        let Some(order) = topo_order(&out) else { continue };
        let desc = descendants(&out, &order);
        let anc = transpose(&desc);
        let missing: Vec<u64> = out.iter().map(|r| !r).collect();
        if shortcut_pair(&out, &desc, &anc, &missing).is_none() {
            allowed.push(mask as u16);
        }
    }
    let edges = local.into_iter().map(|(i, j)| (vertices[i], vertices[j])).collect();
    (edges, allowed)
}

/// Pattern tables for one graph, reusable across many partial orientations
/// of that graph.
pub struct Propagator {
    patterns: Vec<Pattern>,
    by_edge: Vec<Vec<u32>>,
    nonadjacent: Vec<u64>,
}

impl Propagator {
    pub fn new(g: &Graph) -> Self {
        let p0 = PartialOrientation::new(g.clone());
        let mut sets: Vec<(PatternKind, Vec<usize>)> = Vec::new();
        for &(u, v) in p0.edges() {
            for w in Bits(g.neighbors(u) & g.neighbors(v)) {
                if w > v {
                    sets.push((PatternKind::Triangle, vec![u, v, w]));
                }
            }
        }
        let mut quads = BTreeSet::new();
        let n = g.n();
        for a in 0..n {
            for c in a + 1..n {
                let common: Vec<usize> = Bits(g.neighbors(a) & g.neighbors(c)).collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        if !g.adjacent(b, d) {
                            quads.insert(bit(a) | bit(b) | bit(c) | bit(d));
                        }
                    }
                }
            }
        }
        for mask in quads {
            let vs: Vec<usize> = Bits(mask).collect();
            let edge_count = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| g.adjacent(vs[i], vs[j])).count();
            let kind = if edge_count == 4 { PatternKind::Square } else { PatternKind::Diamond };
            sets.push((kind, vs));
        }
        let mut by_edge = vec![Vec::new(); p0.edges().len()];
        let patterns: Vec<Pattern> = sets
            .into_iter()
            .enumerate()
            .map(|(idx, (kind, vertices))| {
                let (pairs, allowed) = local_completions(g, &vertices);
                let edges: Vec<usize> = pairs.iter().map(|&(a, b)| p0.edge_index(a, b).unwrap()).collect();
                for &e in &edges {
                    by_edge[e].push(idx as u32);
                }
                Pattern { kind, vertices, edges, allowed }
            })
            .collect();
        let all = crate::graph::bits::low_mask(n);
        let nonadjacent = (0..n).map(|u| all & !g.neighbors(u) & !bit(u)).collect();
        Propagator { patterns, by_edge, nonadjacent }
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Propagates to fixpoint starting from every pattern.
    pub fn run(&self, p: &mut PartialOrientation) -> Result<(), Contradiction> {
        let all: Vec<u32> = (0..self.patterns.len() as u32).collect();
        self.run_queue(p, all)
    }

    /// Propagates after the given edges changed.
    pub fn run_from(&self, p: &mut PartialOrientation, changed: &[usize]) -> Result<(), Contradiction> {
        let mut seeds = Vec::new();
        for &e in changed {
            seeds.extend_from_slice(&self.by_edge[e]);
        }
        self.run_queue(p, seeds)
    }

    fn run_queue(&self, p: &mut PartialOrientation, seeds: Vec<u32>) -> Result<(), Contradiction> {
        let mut queued = vec![false; self.patterns.len()];
        let mut queue = VecDeque::new();
        for s in seeds {
            if !queued[s as usize] {
                queued[s as usize] = true;
                queue.push_back(s);
            }
        }
        loop {
            while let Some(pi) = queue.pop_front() {
                queued[pi as usize] = false;
                let pat = &self.patterns[pi as usize];
                let (decided, value) = pat.observe(p);
                let mut and = u16::MAX;
                let mut or = 0u16;
                let mut any = false;
                for m in pat.allowed.iter().copied().filter(|m| m & decided == value) {
                    and &= m;
                    or |= m;
                    any = true;
                }
                if !any {
                    return Err(Contradiction::NoCompletion { vertices: pat.vertices.clone() });
                }
                for (i, &e) in pat.edges.iter().enumerate() {
                    if decided & (1 << i) != 0 {
                        continue;
                    }
                    let s = if and & (1 << i) != 0 {
                        EdgeState::Forward
                    } else if or & (1 << i) == 0 {
                        EdgeState::Backward
                    } else {
                        continue;
                    };
                    p.set_state(e, s).expect("undecided edge");
                    self.enqueue_edge(e, &mut queue, &mut queued);
                }
            }
            let forced = self.global(p)?;
            if forced.is_empty() {
                return Ok(());
            }
            for e in forced {
                self.enqueue_edge(e, &mut queue, &mut queued);
            }
        }
    }

    fn enqueue_edge(&self, e: usize, queue: &mut VecDeque<u32>, queued: &mut [bool]) {
        for &q in &self.by_edge[e] {
            if !queued[q as usize] {
                queued[q as usize] = true;
                queue.push_back(q);
            }
        }
    }

    /// Cycle and shortcut checks on the decided arcs, plus reachability
    /// forcing. Returns the edges it decided.
    fn global(&self, p: &mut PartialOrientation) -> Result<Vec<usize>, Contradiction> {
        let out = p.decided_rows().to_vec();
        let Some(order) = topo_order(&out) else {
            return Err(Contradiction::Cycle { cycle: find_cycle(&out).expect("cyclic") });
        };
        let desc = descendants(&out, &order);
        let mut forced = Vec::new();
        for e in 0..p.edges().len() {
            if p.state(e) != EdgeState::Undecided {
                continue;
            }
            let (u, v) = p.edges()[e];
            if desc[u] & bit(v) != 0 {
                p.orient(u, v).expect("undecided edge");
                forced.push(e);
            } else if desc[v] & bit(u) != 0 {
                p.orient(v, u).expect("undecided edge");
                forced.push(e);
            }
        }
        if !forced.is_empty() {
            return Ok(forced);
        }
        let anc = transpose(&desc);
        match shortcut_in(&out, &desc, &anc, &self.nonadjacent) {
            Some(witness) => Err(Contradiction::Shortcut { witness }),
            None => Ok(forced),
        }
    }
}

/// Applies every forced completion to fixpoint.
///
/// Every semi-transitive orientation extending `p` also extends the result.
pub fn propagate(p: &PartialOrientation) -> Result<PartialOrientation, Contradiction> {
    let mut q = p.clone();
    Propagator::new(p.graph()).run(&mut q)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial(n: usize, edges: &[(usize, usize)], arcs: &[(usize, usize)]) -> PartialOrientation {
        let mut p = PartialOrientation::new(Graph::from_edges(n, edges).unwrap());
        for &(u, v) in arcs {
            p.orient(u, v).unwrap();
        }
        p
    }

    #[test]
    fn triangle_rule() {
        let p = propagate(&partial(3, &[(0, 1), (1, 2), (0, 2)], &[(0, 1), (1, 2)])).unwrap();
        assert!(p.has_arc(0, 2));
    }

    #[test]
    fn square_rule() {
        // a=0, b=1, c=2, d=3
        let p = propagate(&partial(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[(0, 1), (1, 2)])).unwrap();
        assert!(p.has_arc(0, 3) && p.has_arc(3, 2));
    }

    #[test]
    fn square_with_directed_path_is_contradictory() {
        let r = propagate(&partial(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[(0, 1), (1, 2), (2, 3)]));
        assert!(matches!(r, Err(Contradiction::NoCompletion { .. })));
    }

    #[test]
    fn k4_is_not_a_four_vertex_pattern() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let prop = Propagator::new(&k4);
        assert!(prop.patterns().iter().all(|p| p.kind == PatternKind::Triangle));
        assert_eq!(prop.patterns().len(), 4);
    }

    #[test]
    fn pattern_tables() {
        let (_, tri) = local_completions(&Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), &[0, 1, 2]);
        assert_eq!(tri.len(), 6);
        let sq = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        // 14 acyclic orientations of C4, 8 of which contain a 3-arc path
        assert_eq!(local_completions(&sq, &[0, 1, 2, 3]).1.len(), 6);
    }

    #[test]
    fn reachability_forces_long_chords() {
        // path 0->1->2->3 plus the edge 0-3 with chords 0-2 and 1-3 present
        let edges = [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)];
        let p = propagate(&partial(4, &edges, &[(0, 1), (1, 2), (2, 3)])).unwrap();
        assert!(p.is_total());
        assert!(p.has_arc(0, 3));
    }
}
