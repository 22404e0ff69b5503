use serde::Serialize;

use super::{EdgeState, PartialOrientation, Propagator};
use crate::error::{Error, Result};
use crate::graph::bits::{bit, Bits};
use crate::graph::{is_semi_transitive, Digraph, Graph};

/// Largest edge count accepted by the solver; counts fit in `u128`.
pub const MAX_SOLVER_EDGES: usize = 127;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    First,
    CountAll,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(Option<Digraph>),
    Count(u128),
}

/// Backtracking search for semi-transitive orientations.
///
/// Components are solved independently. Within a component the first edge is
/// fixed `Forward`: reversing every arc preserves semi-transitivity, so the
/// other half of the space mirrors this one. Branching picks the undecided
/// edge whose endpoints touch the most decided edges (lowest index on ties),
/// tries `Forward` before `Backward`, and propagates after each decision.
pub fn find_semi_transitive(g: &Graph, mode: SearchMode) -> Result<SearchOutcome> {
    if g.edge_count() > MAX_SOLVER_EDGES {
        return Err(Error::SizeLimitExceeded(format!(
            "solver supports at most {MAX_SOLVER_EDGES} edges, got {}",
            g.edge_count()
        )));
    }
    let mut rows = vec![0u64; g.n()];
    let mut count: u128 = 1;
    for comp in g.components() {
        let sub = g.induced(comp);
        if sub.edge_count() == 0 {
            continue;
        }
        let keep: Vec<usize> = Bits(comp).collect();
        match solve_component(&sub, mode) {
            SearchOutcome::Count(c) => {
                count *= c;
                if count == 0 {
                    return Ok(SearchOutcome::Count(0));
                }
            }
            SearchOutcome::Witness(None) => return Ok(SearchOutcome::Witness(None)),
            SearchOutcome::Witness(Some(d)) => {
                for (a, b) in d.arcs() {
                    rows[keep[a]] |= bit(keep[b]);
                }
            }
        }
    }
    Ok(match mode {
        SearchMode::CountAll => SearchOutcome::Count(count),
        SearchMode::First => {
            let d = Digraph::from_rows_unchecked(g.clone(), rows);
            assert!(is_semi_transitive(&d).holds(), "solver produced an invalid witness");
            SearchOutcome::Witness(Some(d))
        }
    })
}

pub fn semi_transitive_orientation(g: &Graph) -> Result<Option<Digraph>> {
    match find_semi_transitive(g, SearchMode::First)? {
        SearchOutcome::Witness(w) => Ok(w),
        SearchOutcome::Count(_) => unreachable!(),
    }
}

pub fn count_semi_transitive(g: &Graph) -> Result<u128> {
    match find_semi_transitive(g, SearchMode::CountAll)? {
        SearchOutcome::Count(c) => Ok(c),
        SearchOutcome::Witness(_) => unreachable!(),
    }
}

fn solve_component(g: &Graph, mode: SearchMode) -> SearchOutcome {
    let prop = Propagator::new(g);
    let mut p = PartialOrientation::new(g.clone());
    p.set_state(0, EdgeState::Forward).expect("fresh");
    let root = prop.run(&mut p).ok().map(|_| p);
    let mut s = Search { prop: &prop, count: 0 };
    match mode {
        SearchMode::First => SearchOutcome::Witness(root.and_then(|p| s.first(p))),
        SearchMode::CountAll => {
            if let Some(p) = root {
                s.count_all(p);
            }
            SearchOutcome::Count(2 * s.count)
        }
    }
}

struct Search<'a> {
    prop: &'a Propagator,
    count: u128,
}

impl Search<'_> {
    fn branch_edge(p: &PartialOrientation) -> Option<usize> {
        let rows = p.decided_rows();
        let n = rows.len();
        let mut touched = vec![0u32; n];
        for u in 0..n {
            for v in Bits(rows[u]) {
                touched[u] += 1;
                touched[v] += 1;
            }
        }
        let mut best: Option<(u32, usize)> = None;
        for (e, &(u, v)) in p.edges().iter().enumerate() {
            if p.state(e) != EdgeState::Undecided {
                continue;
            }
            let score = touched[u] + touched[v];
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, e));
            }
        }
        best.map(|(_, e)| e)
    }

    fn children(&self, p: &PartialOrientation, e: usize) -> impl Iterator<Item = PartialOrientation> + '_ {
        let p = p.clone();
        [EdgeState::Forward, EdgeState::Backward].into_iter().filter_map(move |s| {
            let mut q = p.clone();
            q.set_state(e, s).expect("undecided");
            self.prop.run_from(&mut q, &[e]).ok().map(|_| q)
        })
    }

    fn first(&mut self, p: PartialOrientation) -> Option<Digraph> {
        let Some(e) = Self::branch_edge(&p) else {
            let d = p.to_digraph().expect("total");
            assert!(is_semi_transitive(&d).holds(), "propagation accepted a non-semi-transitive leaf");
            return Some(d);
        };
        let kids: Vec<_> = self.children(&p, e).collect();
        kids.into_iter().find_map(|q| self.first(q))
    }

    fn count_all(&mut self, p: PartialOrientation) {
        let Some(e) = Self::branch_edge(&p) else {
            let d = p.to_digraph().expect("total");
            assert!(is_semi_transitive(&d).holds(), "propagation accepted a non-semi-transitive leaf");
            self.count += 1;
            return;
        };
        let kids: Vec<_> = self.children(&p, e).collect();
        for q in kids {
            self.count_all(q);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel(k: usize) -> Graph {
        let mut g = Graph::new(k + 1).unwrap();
        for i in 0..k {
            g.add_edge(i, (i + 1) % k).unwrap();
            g.add_edge(i, k).unwrap();
        }
        g
    }

    #[test]
    fn wheels() {
        assert!(semi_transitive_orientation(&wheel(4)).unwrap().is_some());
        assert!(semi_transitive_orientation(&wheel(5)).unwrap().is_none());
        assert!(semi_transitive_orientation(&wheel(6)).unwrap().is_some());
        assert!(semi_transitive_orientation(&wheel(7)).unwrap().is_none());
        assert_eq!(count_semi_transitive(&wheel(5)).unwrap(), 0);
    }

    #[test]
    fn complete_graph_counts() {
        let mut k4 = Graph::new(4).unwrap();
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(count_semi_transitive(&k4).unwrap(), 24);
    }

    #[test]
    fn components_multiply() {
        let two_edges = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(count_semi_transitive(&two_edges).unwrap(), 4);
        assert_eq!(count_semi_transitive(&Graph::new(3).unwrap()).unwrap(), 1);
        let d = semi_transitive_orientation(&two_edges).unwrap().unwrap();
        assert_eq!(d.arc_count(), 2);
    }
}
