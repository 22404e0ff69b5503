//! Canonical labeling for small graphs: equitable partition refinement plus
//! an individualization search over the residual cells, pruned by the
//! automorphisms discovered along the way.

use serde::Serialize;

use super::bits::{bit, Bits};
use super::{Digraph, Graph};
use crate::error::{Error, Result};

pub const CANONICAL_MAX_VERTICES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    /// `labeling[i]` is the original index placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Isomorphism-class certificate: vertex count and the upper triangle of
    /// the canonical adjacency matrix in hex.
    pub certificate: String,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANONICAL_MAX_VERTICES {
        return Err(Error::SizeLimitExceeded(format!(
            "canonical form supports at most {CANONICAL_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let mut search = Search { adj: g.adjacency_rows(), best: None, autos: Vec::new() };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    if n > 0 {
        refine(search.adj, &mut cells);
        search.descend(cells, &mut Vec::new());
    }
    let labeling = search.best.map(|(order, _)| order).unwrap_or_default();
    let certificate = certificate(g, &labeling);
    Ok(CanonicalForm { labeling, certificate })
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)?.certificate == canonical_form(h)?.certificate)
}

fn certificate(g: &Graph, labeling: &[usize]) -> String {
    let n = labeling.len();
    let mut s = format!("{n}:");
    let mut nibble = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            nibble = (nibble << 1) | g.adjacent(labeling[i], labeling[j]) as u8;
            filled += 1;
            if filled == 4 {
                s.push(char::from_digit(nibble as u32, 16).unwrap());
                nibble = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        s.push(char::from_digit((nibble << (4 - filled)) as u32, 16).unwrap());
    }
    s
}

/// Splits cells until every vertex in a cell sees the same number of
/// neighbours in every cell. Splits are ordered by the count vectors, which
/// keeps the procedure label-invariant.
fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |a, &v| a | bit(v))).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones() as u8).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(Vec<usize>, Vec<u64>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let target = cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i));
        let Some((ti, _)) = target else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let members = cells[ti].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&w| self.same_orbit(prefix, w, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(vec![v]);
            child.push(members.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[ti + 1..]);
            refine(self.adj, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = order.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = order.iter().map(|&v| Bits(self.adj[v]).fold(0, |a, w| a | bit(pos[w]))).collect();
        match &self.best {
            None => self.best = Some((order, rows)),
            Some((best_order, best_rows)) => {
                if rows == *best_rows {
                    // order[i] and best_order[i] play the same role.
                    let mut gamma = vec![0usize; n];
                    for i in 0..n {
                        gamma[order[i]] = best_order[i];
                    }
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.autos.push(gamma);
                    }
                } else if rows < *best_rows {
                    self.best = Some((order, rows));
                }
            }
        }
    }

    /// Are `a` and `b` in one orbit of the group generated by the known
    /// automorphisms that fix every vertex of `prefix`?
    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let gens: Vec<&Vec<usize>> =
            self.autos.iter().filter(|g| prefix.iter().all(|&p| g[p] == p)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut orbit = bit(a);
        let mut frontier = vec![a];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g[x];
                if orbit & bit(y) == 0 {
                    if y == b {
                        return true;
                    }
                    orbit |= bit(y);
                    frontier.push(y);
                }
            }
        }
        false
    }
}

/// An isomorphism `map[u] = v` from `a` onto `b` (arcs to arcs), if one exists.
pub fn digraph_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.arc_count() != b.arc_count() {
        return None;
    }
    let sig = |d: &Digraph, v: usize| (d.out_neighbors(v).count_ones(), d.in_neighbors(v).count_ones());
    let sa: Vec<_> = (0..n).map(|v| sig(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| sig(b, v)).collect();
    let (sa_sorted, sb_sorted) = {
        let mut x = sa.clone();
        let mut y = sb.clone();
        x.sort();
        y.sort();
        (x, y)
    };
    if sa_sorted != sb_sorted {
        return None;
    }
    fn go(
        a: &Digraph,
        b: &Digraph,
        sa: &[(u32, u32)],
        sb: &[(u32, u32)],
        map: &mut Vec<usize>,
        used: u64,
    ) -> bool {
        let u = map.len();
        if u == a.n() {
            return true;
        }
        for v in Bits(b.underlying().vertex_mask() & !used) {
            if sa[u] != sb[v] {
                continue;
            }
            let ok = (0..u).all(|w| {
                a.has_arc(u, w) == b.has_arc(v, map[w]) && a.has_arc(w, u) == b.has_arc(map[w], v)
            });
            if ok {
                map.push(v);
                if go(a, b, sa, sb, map, used | bit(v)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    let found = go(a, b, &sa, &sb, &mut map, 0);
    found.then_some(map)
}
