//! Acyclicity, reachability and shortcut detection.
//!
//! A shortcut arc `u -> v` exists iff the set `P` of vertices lying on some
//! directed `u ~> v` walk (endpoints included) contains `x, y` with `x`
//! reaching `y` but no arc `x -> y`. In a DAG every path between members of
//! `P` stays inside `P`, so the witness path `u ~> x ~> y ~> v` is simple and
//! has at least four vertices (the arc `u -> v` itself rules out `x = u,
//! y = v`).

use serde::Serialize;

use super::bits::{bit, Bits};
use super::{Digraph, VertexId};
use crate::error::{Error, Result};

/// A directed path `path[0] -> ... -> path[k-1]` (k >= 4) with the closing arc
/// `path[0] -> path[k-1]` present and the arc `missing.0 -> missing.1` absent.
/// All entries are vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortcutWitness {
    pub path: Vec<usize>,
    pub missing: (usize, usize),
}

impl ShortcutWitness {
    pub fn closing_arc(&self) -> (usize, usize) {
        (self.path[0], *self.path.last().expect("non-empty path"))
    }

    /// Checks the witness against a digraph: path arcs and closing arc
    /// present, missing arc absent and ordered along the path, vertices
    /// distinct, at least four of them.
    pub fn validate(&self, d: &Digraph) -> bool {
        let p = &self.path;
        if p.len() < 4 || p.iter().any(|&v| v >= d.n()) {
            return false;
        }
        let distinct = p.iter().fold(0u64, |acc, &v| acc | bit(v)).count_ones() as usize == p.len();
        let (a, b) = self.missing;
        let ia = p.iter().position(|&v| v == a);
        let ib = p.iter().position(|&v| v == b);
        distinct
            && p.windows(2).all(|w| d.has_arc(w[0], w[1]))
            && d.has_arc(p[0], p[p.len() - 1])
            && matches!((ia, ib), (Some(i), Some(j)) if i < j)
            && !d.has_arc(a, b)
    }

    pub fn to_ids(&self, d: &Digraph) -> (Vec<VertexId>, (VertexId, VertexId)) {
        let g = d.underlying();
        (self.path.iter().map(|&v| g.id(v)).collect(), (g.id(self.missing.0), g.id(self.missing.1)))
    }
}

/// Verdict of [`is_semi_transitive`] with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SemiTransitivity {
    SemiTransitive { topological_order: Vec<usize> },
    /// Vertex indices of a directed cycle, in arc order.
    Cycle { cycle: Vec<usize> },
    Shortcut { witness: ShortcutWitness },
}

impl SemiTransitivity {
    pub fn holds(&self) -> bool {
        matches!(self, SemiTransitivity::SemiTransitive { .. })
    }
}

/// Topological order of `d` (smallest available index first), or `None` if
/// `d` has a directed cycle.
pub fn is_acyclic(d: &Digraph) -> Option<Vec<usize>> {
    topo_order(d.out_rows())
}

/// A shortcut witness for an acyclic digraph, choosing the least closing arc
/// and then the least missing arc.
pub fn find_shortcut(d: &Digraph) -> Result<Option<ShortcutWitness>> {
    let out = d.out_rows();
    let order = topo_order(out).ok_or(Error::CyclicInput)?;
    let desc = descendants(out, &order);
    let anc = transpose(&desc);
    let missing: Vec<u64> = out.iter().map(|r| !r).collect();
    Ok(shortcut_in(out, &desc, &anc, &missing))
}

/// Acyclic and shortcut-free, with a cycle or shortcut certificate otherwise.
pub fn is_semi_transitive(d: &Digraph) -> SemiTransitivity {
    match is_acyclic(d) {
        None => SemiTransitivity::Cycle { cycle: find_cycle(d.out_rows()).expect("cyclic digraph has a cycle") },
        Some(topological_order) => match find_shortcut(d).expect("acyclic") {
            Some(witness) => SemiTransitivity::Shortcut { witness },
            None => SemiTransitivity::SemiTransitive { topological_order },
        },
    }
}

pub(crate) fn topo_order(out: &[u64]) -> Option<Vec<usize>> {
    let n = out.len();
    let inn = transpose(out);
    let mut remaining = super::bits::low_mask(n);
    let mut order = Vec::with_capacity(n);
    while remaining != 0 {
        let v = Bits(remaining).find(|&v| inn[v] & remaining == 0)?;
        order.push(v);
        remaining &= !bit(v);
    }
    Some(order)
}

/// `rows[u]` has bit `v` set  <=>  result `[v]` has bit `u` set.
pub(crate) fn transpose(rows: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; rows.len()];
    for (u, &r) in rows.iter().enumerate() {
        for v in Bits(r) {
            t[v] |= bit(u);
        }
    }
    t
}

/// Strict descendants of each vertex, given a topological order.
pub(crate) fn descendants(out: &[u64], order: &[usize]) -> Vec<u64> {
    let mut desc = vec![0u64; out.len()];
    for &u in order.iter().rev() {
        let mut d = out[u];
        for v in Bits(out[u]) {
            d |= desc[v];
        }
        desc[u] = d;
    }
    desc
}

/// Shortcut scan. `missing[x]` marks the `y` for which "x reaches y without
/// an arc x -> y" counts as a violation.
pub(crate) fn shortcut_in(out: &[u64], desc: &[u64], anc: &[u64], missing: &[u64]) -> Option<ShortcutWitness> {
    let (u, v, x, y) = shortcut_pair(out, desc, anc, missing)?;
    let mut path = path_between(out, anc, u, x);
    path.pop();
    let mut mid = path_between(out, anc, x, y);
    mid.pop();
    path.extend(mid);
    path.extend(path_between(out, anc, y, v));
    Some(ShortcutWitness { path, missing: (x, y) })
}

/// Just the `(u, v, x, y)` quadruple: closing arc and offending pair.
pub(crate) fn shortcut_pair(
    out: &[u64],
    desc: &[u64],
    anc: &[u64],
    missing: &[u64],
) -> Option<(usize, usize, usize, usize)> {
    for u in 0..out.len() {
        for v in Bits(out[u]) {
            let between = (desc[u] & anc[v]) | bit(u) | bit(v);
            if between.count_ones() < 4 {
                continue;
            }
            for x in Bits(between) {
                let bad = desc[x] & between & missing[x];
                if bad != 0 {
                    return Some((u, v, x, bad.trailing_zeros() as usize));
                }
            }
        }
    }
    None
}

/// BFS path `s ~> t` (inclusive), exploring out-neighbours in index order and
/// staying inside the ancestors of `t`.
fn path_between(out: &[u64], anc: &[u64], s: usize, t: usize) -> Vec<usize> {
    if s == t {
        return vec![s];
    }
    let allowed = anc[t] | bit(t);
    let mut pred = vec![usize::MAX; out.len()];
    let mut seen = bit(s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        for b in Bits(out[a] & allowed & !seen) {
            seen |= bit(b);
            pred[b] = a;
            if b == t {
                let mut path = vec![t];
                let mut c = t;
                while c != s {
                    c = pred[c];
                    path.push(c);
                }
                path.reverse();
                return path;
            }
            queue.push_back(b);
        }
    }
    unreachable!("t is reachable from s")
}

/// Some directed cycle, if any, as vertices in arc order.
pub(crate) fn find_cycle(out: &[u64]) -> Option<Vec<usize>> {
    let n = out.len();
    let inn = transpose(out);
    // Peel sources; what is left has every vertex with an in-arc from inside.
    let mut remaining = super::bits::low_mask(n);
    while let Some(v) = Bits(remaining).find(|&v| inn[v] & remaining == 0) {
        remaining &= !bit(v);
    }
    if remaining == 0 {
        return None;
    }
    let mut walk = vec![remaining.trailing_zeros() as usize];
    let mut on_walk = bit(walk[0]);
    loop {
        let cur = *walk.last().unwrap();
        let prev = (inn[cur] & remaining).trailing_zeros() as usize;
        if on_walk & bit(prev) != 0 {
            let start = walk.iter().position(|&w| w == prev).unwrap();
            let mut cycle: Vec<usize> = walk[start..].to_vec();
            cycle.reverse();
            return Some(cycle);
        }
        walk.push(prev);
        on_walk |= bit(prev);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shortcut_figure() -> Digraph {
        Digraph::from_id_arcs(
            vec![1, 2, 3, 4, 5, 6],
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (1, 3),
                (1, 5),
                (1, 6),
                (2, 4),
                (2, 6),
                (3, 5),
                (4, 6),
            ],
        )
        .unwrap()
    }

    fn tournament(n: usize) -> Digraph {
        let arcs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
            .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
            .collect();
        Digraph::from_id_arcs((0..n as VertexId).collect(), &arcs).unwrap()
    }

    #[test]
    fn acyclicity_examples() {
        assert_eq!(is_acyclic(&tournament(4)), Some(vec![0, 1, 2, 3]));
        let c3 = Digraph::from_id_arcs(vec![0, 1, 2], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(is_acyclic(&c3), None);
        assert_eq!(is_acyclic(&shortcut_figure()), Some(vec![0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn shortcut_figure_witness() {
        let d = shortcut_figure();
        let w = find_shortcut(&d).unwrap().unwrap();
        assert!(w.validate(&d));
        let (path, missing) = w.to_ids(&d);
        assert_eq!((path[0], *path.last().unwrap()), (1, 5));
        assert_eq!(missing, (1, 4));
    }

    #[test]
    fn transitive_tournament_has_no_shortcut() {
        assert_eq!(find_shortcut(&tournament(5)).unwrap(), None);
    }

    #[test]
    fn minimal_shortcut() {
        let d = Digraph::from_id_arcs(vec![1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let w = find_shortcut(&d).unwrap().unwrap();
        let (path, missing) = w.to_ids(&d);
        assert_eq!(path, vec![1, 2, 3, 4]);
        assert_eq!(missing, (1, 3));
    }

    #[test]
    fn cyclic_input_is_an_error() {
        let c3 = Digraph::from_id_arcs(vec![0, 1, 2], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(find_shortcut(&c3), Err(Error::CyclicInput));
        match is_semi_transitive(&c3) {
            SemiTransitivity::Cycle { cycle } => {
                assert_eq!(cycle.len(), 3);
                for i in 0..3 {
                    assert!(c3.has_arc(cycle[i], cycle[(i + 1) % 3]));
                }
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn semi_transitivity_of_figure_is_refuted_by_shortcut() {
        assert!(matches!(is_semi_transitive(&shortcut_figure()), SemiTransitivity::Shortcut { .. }));
        assert!(is_semi_transitive(&tournament(6)).holds());
    }
}
