//! Brute-force oracles used by the integration tests. They work on plain
//! adjacency matrices and share no code with the library.
#![allow(dead_code)]

use proptest::prelude::*;
use wordrep_core::graph::Graph;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Graph) -> Matrix {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.adjacent(u, v)).collect()).collect()
}

pub fn edge_list(adj: &Matrix) -> Vec<(usize, usize)> {
    let n = adj.len();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]).collect()
}

/// Arc matrix for the orientation of `edges` selected by `bits`
/// (bit set: lower index to higher).
pub fn orientation(n: usize, edges: &[(usize, usize)], bits: u64) -> Matrix {
    let mut arc = vec![vec![false; n]; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if bits >> i & 1 == 1 {
            arc[u][v] = true;
        } else {
            arc[v][u] = true;
        }
    }
    arc
}

/// Every simple directed path with at least two vertices.
fn paths(arc: &Matrix) -> Vec<Vec<usize>> {
    fn extend(arc: &Matrix, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 2 {
            out.push(path.clone());
        }
        let last = *path.last().unwrap();
        for v in 0..arc.len() {
            if arc[last][v] && !path.contains(&v) {
                path.push(v);
                extend(arc, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..arc.len() {
        extend(arc, &mut vec![s], &mut out);
    }
    out
}

pub fn has_cycle(arc: &Matrix) -> bool {
    paths(arc).iter().any(|p| arc[*p.last().unwrap()][p[0]])
}

/// A path `v0 -> .. -> vk` (k >= 3) with arc `v0 -> vk` and some `vi -> vj`
/// (i < j) missing.
pub fn has_shortcut(arc: &Matrix) -> bool {
    paths(arc).iter().any(|p| {
        p.len() >= 4
            && arc[p[0]][*p.last().unwrap()]
            && (0..p.len()).any(|i| (i + 1..p.len()).any(|j| !arc[p[i]][p[j]]))
    })
}

pub fn semi_transitive(arc: &Matrix) -> bool {
    !has_cycle(arc) && !has_shortcut(arc)
}

/// Number of semi-transitive orientations, by trying all `2^|E|`.
pub fn count_orientations(adj: &Matrix) -> u128 {
    let edges = edge_list(adj);
    (0..1u64 << edges.len()).filter(|&b| semi_transitive(&orientation(adj.len(), &edges, b))).count() as u128
}

/// All injective maps of `k` pattern vertices into `0..n`.
pub fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

pub fn contains_induced(host: &Matrix, pattern: &Matrix) -> bool {
    let k = pattern.len();
    injections(host.len(), k)
        .iter()
        .any(|m| (0..k).all(|i| (0..k).all(|j| i == j || pattern[i][j] == host[m[i]][m[j]])))
}

/// Lexicographically least adjacency string over all vertex orders.
pub fn canonical_string(adj: &Matrix) -> String {
    let n = adj.len();
    injections(n, n)
        .iter()
        .map(|p| {
            let mut s = String::with_capacity(n * n);
            for i in 0..n {
                for j in i + 1..n {
                    s.push(if adj[p[i]][p[j]] { '1' } else { '0' });
                }
            }
            s
        })
        .min()
        .unwrap_or_default()
}

/// Whether `x` and `y` alternate in `w`.
pub fn alternate(w: &[u32], x: u32, y: u32) -> bool {
    let seq: Vec<u32> = w.iter().copied().filter(|&c| c == x || c == y).collect();
    seq.windows(2).all(|p| p[0] != p[1])
}

/// Random graph on `2..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Random graph with at most `max_edges` edges.
pub fn arb_sparse_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_map(move |g| {
        let keep: Vec<(usize, usize)> = g.edges().into_iter().take(max_edges).collect();
        Graph::from_edges(g.n(), &keep).unwrap()
    })
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

use wordrep_core::semitrans::{BranchScript, ScriptOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    Delete,
    Reverse,
    Substitute,
}

/// Single-step mutations of a script: each step deleted, each oriented pair
/// reversed, each shortcut path reversed, and each cycle with its first
/// vertex replaced by the smallest label outside it.
pub fn script_mutations(s: &BranchScript) -> Vec<(Mutation, String, BranchScript)> {
    let mut out = Vec::new();
    for (i, op) in s.ops.iter().enumerate() {
        let mut d = s.clone();
        d.ops.remove(i);
        out.push((Mutation::Delete, format!("delete #{i} `{op}`"), d));
        let mut m = s.clone();
        let kind = match &mut m.ops[i] {
            ScriptOp::Orient { from, to } | ScriptOp::Branch { from, to, .. } => {
                std::mem::swap(from, to);
                Mutation::Reverse
            }
            ScriptOp::Shortcut { path } => {
                path.reverse();
                Mutation::Reverse
            }
            ScriptOp::Complete { cycle } => {
                cycle[0] = (0..).find(|l| !cycle.contains(l)).unwrap();
                Mutation::Substitute
            }
            ScriptOp::MoveToCopy { .. } => continue,
        };
        out.push((kind, format!("alter #{i} `{op}` to `{}`", m.ops[i]), m));
    }
    out
}
