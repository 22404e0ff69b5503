//! Derives branching proofs in the script format: forced cycle completions
//! until a copy closes by a shortcut or cycle, branching otherwise.

use super::propagate::local_completions;
use super::script::{replay_script, BranchScript, Label, Labeling, ScriptOp};
use super::{EdgeState, PartialOrientation};
use crate::graph::bits::{bit, Bits};
use crate::graph::Graph;

/// Candidate `C` steps: triangles, and Hamiltonian orderings of 4-sets that
/// do not induce K4.
fn cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in Bits(g.neighbors(a) & !((bit(a) << 1) - 1)) {
            for c in Bits(g.neighbors(a) & g.neighbors(b) & !((bit(b) << 1) - 1)) {
                out.push(vec![a, b, c]);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = [a, b, c, d];
                    let edges = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| g.adjacent(s[i], s[j])).count();
                    if edges == 6 {
                        continue;
                    }
                    for [x, y, z] in [[1, 2, 3], [1, 3, 2], [2, 1, 3]] {
                        let o = [s[0], s[x], s[y], s[z]];
                        if (0..4).all(|i| g.adjacent(o[i], o[(i + 1) % 4])) {
                            out.push(o.to_vec());
                        }
                    }
                }
            }
        }
    }
    out
}

struct Deriver<'a> {
    g: &'a Graph,
    labels: &'a [Label],
    cycles: Vec<Vec<usize>>,
    ops: Vec<ScriptOp>,
    next_copy: usize,
}

impl Deriver<'_> {
    fn label_vec(&self, vs: &[usize]) -> Vec<Label> {
        vs.iter().map(|&v| self.labels[v]).collect()
    }

    fn copy_name(i: usize) -> String {
        let letters = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ";
        if i < 26 {
            (letters[i] as char).to_string()
        } else {
            format!("{}{}", letters[i % 26] as char, i / 26)
        }
    }

    /// A closing `S` path in the decided arcs.
    fn shortcut(&self, p: &PartialOrientation) -> Option<Vec<usize>> {
        let out = p.decided_rows();
        for a in 0..self.g.n() {
            for b in Bits(out[a]) {
                for c in Bits(out[b] & !bit(a)) {
                    for d in Bits(out[c] & !bit(a) & !bit(b)) {
                        if out[d] & bit(a) != 0 {
                            return Some(vec![a, b, c, d]);
                        }
                        if out[a] & bit(d) == 0 {
                            continue;
                        }
                        let blocked = |i: usize, j: usize| !self.g.adjacent(i, j) || out[j] & bit(i) != 0;
                        if blocked(a, c) || blocked(b, d) {
                            return Some(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// A `C` step that decides at least one undecided cycle edge.
    fn completion(&self, p: &mut PartialOrientation) -> Option<Vec<usize>> {
        for cyc in &self.cycles {
            let k = cyc.len();
            let undecided: Vec<usize> = (0..k)
                .filter(|&i| p.state(p.edge_index(cyc[i], cyc[(i + 1) % k]).unwrap()) == EdgeState::Undecided)
                .collect();
            if undecided.is_empty() {
                continue;
            }
            let mut sorted = cyc.clone();
            sorted.sort_unstable();
            let (pairs, allowed) = local_completions(self.g, &sorted);
            let (mut decided, mut value) = (0u16, 0u16);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                match p.state(p.edge_index(a, b).unwrap()) {
                    EdgeState::Undecided => {}
                    EdgeState::Forward => {
                        decided |= 1 << i;
                        value |= 1 << i;
                    }
                    EdgeState::Backward => decided |= 1 << i,
                }
            }
            let options: Vec<u16> = allowed.into_iter().filter(|m| m & decided == value).collect();
            if options.is_empty() {
                continue;
            }
            let mut forced = Vec::new();
            for &i in &undecided {
                let (a, b) = (cyc[i], cyc[(i + 1) % k]);
                let t = pairs.iter().position(|&q| q == (a.min(b), a.max(b))).unwrap();
                let fw = options[0] & (1 << t) != 0;
                if options.iter().all(|m| (m & (1 << t) != 0) == fw) {
                    let (lo, hi) = pairs[t];
                    forced.push(if fw { (lo, hi) } else { (hi, lo) });
                }
            }
            // Replay insists every undecided cycle edge is forced.
            if forced.len() == undecided.len() {
                for (u, v) in forced {
                    p.orient(u, v).unwrap();
                }
                return Some(cyc.clone());
            }
        }
        None
    }

    fn branch_edge(&self, p: &PartialOrientation) -> Option<(usize, usize)> {
        let rows = p.decided_rows();
        let touched: Vec<u32> = (0..self.g.n())
            .map(|u| rows[u].count_ones() + (0..self.g.n()).filter(|&w| rows[w] & bit(u) != 0).count() as u32)
            .collect();
        p.edges()
            .iter()
            .enumerate()
            .filter(|(e, _)| p.state(*e) == EdgeState::Undecided)
            .max_by_key(|(e, &(u, v))| (touched[u] + touched[v], std::cmp::Reverse(*e)))
            .map(|(_, &uv)| uv)
    }

    fn close(&mut self, mut p: PartialOrientation, depth: usize) -> bool {
        loop {
            if let Some(path) = self.shortcut(&p) {
                self.ops.push(ScriptOp::Shortcut { path: self.label_vec(&path) });
                return true;
            }
            match self.completion(&mut p) {
                Some(cyc) => self.ops.push(ScriptOp::Complete { cycle: self.label_vec(&cyc) }),
                None => break,
            }
        }
        if depth > self.g.edge_count() {
            return false;
        }
        let Some((u, v)) = self.branch_edge(&p) else { return false };
        let copy = Self::copy_name(self.next_copy);
        self.next_copy += 1;
        let (lu, lv) = (self.labels[u], self.labels[v]);
        self.ops.push(ScriptOp::Branch { from: lu, to: lv, copy: copy.clone() });
        let mut other = p.clone();
        other.orient(v, u).unwrap();
        p.orient(u, v).unwrap();
        if !self.close(p, depth + 1) {
            return false;
        }
        self.ops.push(ScriptOp::MoveToCopy { copy });
        self.close(other, depth + 1)
    }
}

/// A branching proof that `g` has no semi-transitive orientation, written
/// with the labels of `labeling`, starting from its first edge oriented
/// forward. `None` when some copy cannot be closed by the script operations
/// (for instance a representable graph, or a contradiction only visible
/// through a longer path).
///
/// `C` steps the proof does not need are dropped, so deleting any step of
/// the result breaks it.
pub fn derive_script(g: &Graph, labeling: &Labeling) -> Option<BranchScript> {
    let &(a, b) = g.edges().first()?;
    let mut d = Deriver { g, labels: &labeling.labels, cycles: cycles(g), ops: Vec::new(), next_copy: 1 };
    d.ops.push(ScriptOp::Orient { from: labeling.labels[a], to: labeling.labels[b] });
    let mut p = PartialOrientation::new(g.clone());
    p.orient(a, b).unwrap();
    if !d.close(p, 0) {
        return None;
    }
    let mut script = BranchScript { ops: d.ops };
    let proven = |s: &BranchScript| matches!(replay_script(g, labeling, s), Ok(r) if r.proven());
    debug_assert!(proven(&script));
    let mut i = script.ops.len();
    while i > 0 {
        i -= 1;
        if matches!(script.ops[i], ScriptOp::Complete { .. }) {
            let removed = script.ops.remove(i);
            if !proven(&script) {
                script.ops.insert(i, removed);
            }
        }
    }
    Some(script)
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
    fn wheel_five_proof_replays() {
        let g = wheel(5);
        let lab = Labeling::from_ids(&g);
        let s = derive_script(&g, &lab).expect("W5 has a branching proof");
        let r = replay_script(&g, &lab, &s).unwrap();
        assert!(r.proven(), "{s}");
    }

    #[test]
    fn representable_graph_has_no_proof() {
        let g = wheel(4);
        assert!(derive_script(&g, &Labeling::from_ids(&g)).is_none());
    }
}
