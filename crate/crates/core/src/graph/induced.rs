use serde::Serialize;

use super::bits::{bit, Bits};
use super::Graph;

/// Induced-subgraph embedding: `map[p]` is the host vertex for pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Injective, and adjacency and non-adjacency both preserved.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let m = &self.map;
        if m.len() != pattern.n() || m.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let image = m.iter().fold(0u64, |a, &v| a | bit(v));
        if image.count_ones() as usize != m.len() {
            return false;
        }
        (0..m.len()).all(|p| (0..p).all(|q| pattern.adjacent(p, q) == host.adjacent(m[p], m[q])))
    }
}

/// First induced copy of `pattern` in `host`.
///
/// Pattern vertices are placed in a fixed connectivity-first order (most
/// already-placed neighbours, then highest degree, then lowest index); host
/// candidates are tried in ascending index order, filtered by degree and by
/// the exact adjacency pattern to already-placed vertices.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    if k == 0 {
        return Some(Embedding { map: Vec::new() });
    }
    if pattern.edge_count() > host.edge_count() {
        return None;
    }
    let order = placement_order(pattern);
    let host_deg: Vec<u32> = (0..host.n()).map(|v| host.neighbors(v).count_ones()).collect();
    // Host vertices by degree threshold, precomputed per pattern vertex.
    let deg_ok: Vec<u64> = (0..k)
        .map(|p| {
            let d = pattern.neighbors(p).count_ones();
            (0..host.n()).filter(|&v| host_deg[v] >= d).fold(0u64, |a, v| a | bit(v))
        })
        .collect();
    let mut map = vec![usize::MAX; k];
    if place(host, pattern, &order, &deg_ok, 0, 0, &mut map) {
        Some(Embedding { map })
    } else {
        None
    }
}

fn placement_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&p| placed & bit(p) == 0)
            .max_by_key(|&p| {
                let nb = pattern.neighbors(p);
                ((nb & placed).count_ones(), nb.count_ones(), std::cmp::Reverse(p))
            })
            .unwrap();
        placed |= bit(next);
        order.push(next);
    }
    order
}

fn place(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    deg_ok: &[u64],
    depth: usize,
    used: u64,
    map: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cand = deg_ok[p] & !used;
    for &q in &order[..depth] {
        let hq = host.neighbors(map[q]);
        cand &= if pattern.adjacent(p, q) { hq } else { !hq };
        if cand == 0 {
            return false;
        }
    }
    for v in Bits(cand) {
        map[p] = v;
        if place(host, pattern, order, deg_ok, depth + 1, used | bit(v), map) {
            return true;
        }
    }
    map[p] = usize::MAX;
    false
}
