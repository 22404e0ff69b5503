use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::bits::{bit, Bits};
use crate::graph::{Digraph, Graph};

pub const COLORING_MAX_VERTICES: usize = 32;

/// A proper colouring with colours `0..k`, if one exists. Vertices are
/// coloured in descending degree order; a new colour is only opened as the
/// next unused one.
pub fn k_colorable(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > COLORING_MAX_VERTICES {
        return Err(Error::SizeLimitExceeded(format!("colouring supports at most {COLORING_MAX_VERTICES} vertices, got {n}")));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut color = vec![usize::MAX; n];
    let mut class = vec![0u64; k];
    Ok(assign(g, &order, 0, k, 0, &mut color, &mut class).then_some(color))
}

fn assign(g: &Graph, order: &[usize], depth: usize, k: usize, used: usize, color: &mut [usize], class: &mut [u64]) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    for c in 0..k.min(used + 1) {
        if class[c] & g.neighbors(v) != 0 {
            continue;
        }
        color[v] = c;
        class[c] |= bit(v);
        if assign(g, order, depth + 1, k, used.max(c + 1), color, class) {
            return true;
        }
        class[c] &= !bit(v);
    }
    color[v] = usize::MAX;
    false
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    for k in 0..=g.n() {
        if k_colorable(g, k)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

/// Orients every edge from the lower colour to the higher. With at most
/// three classes the longest directed path has two arcs, so the result is
/// semi-transitive.
pub fn orient_by_coloring(g: &Graph, coloring: &[usize]) -> Result<Digraph> {
    assert_eq!(coloring.len(), g.n(), "one colour per vertex");
    let classes: BTreeSet<usize> = coloring.iter().copied().collect();
    if classes.len() > 3 {
        return Err(Error::TooManyClasses(classes.len()));
    }
    let mut out = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        match coloring[u].cmp(&coloring[v]) {
            std::cmp::Ordering::Less => out[u] |= bit(v),
            std::cmp::Ordering::Greater => out[v] |= bit(u),
            std::cmp::Ordering::Equal => return Err(Error::ImproperColoring(g.id(u), g.id(v))),
        }
    }
    debug_assert!((0..g.n()).all(|u| Bits(out[u]).all(|v| g.adjacent(u, v))));
    Ok(Digraph::from_rows_unchecked(g.clone(), out))
}
