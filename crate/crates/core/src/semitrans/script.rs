//! Branching proofs written as operation scripts, and a checker that replays
//! them against a labelled graph.
//!
//! Text format, one operation per comma/semicolon/period-separated chunk:
//!
//! ```text
//! O 13            orient 1 -> 3 (only as the very first step)
//! B 37 (NC B)     branch: here 3 -> 7, new copy B gets 7 -> 3
//! C 137           complete the forced orientation of a 3- or 4-cycle
//! MC B            move to a pending copy (the current one must be closed)
//! S 1324          close the current copy with a shortcut or directed cycle
//! ```
//!
//! Labels are single digits when written together (`137`) or
//! whitespace-separated (`C 10 11 12`). `$` and `\item` are ignored so a
//! LaTeX listing can be pasted as is.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::propagate::local_completions;
use super::{EdgeState, PartialOrientation};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptOp {
    Orient { from: Label, to: Label },
    Branch { from: Label, to: Label, copy: String },
    Complete { cycle: Vec<Label> },
    MoveToCopy { copy: String },
    Shortcut { path: Vec<Label> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchScript {
    pub ops: Vec<ScriptOp>,
}

fn write_labels(f: &mut fmt::Formatter<'_>, labels: &[Label]) -> fmt::Result {
    if labels.iter().all(|&l| l < 10) {
        for l in labels {
            write!(f, "{l}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for ScriptOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptOp::Orient { from, to } => {
                f.write_str("O ")?;
                write_labels(f, &[*from, *to])
            }
            ScriptOp::Branch { from, to, copy } => {
                f.write_str("B ")?;
                write_labels(f, &[*from, *to])?;
                write!(f, " (NC {copy})")
            }
            ScriptOp::Complete { cycle } => {
                f.write_str("C ")?;
                write_labels(f, cycle)
            }
            ScriptOp::MoveToCopy { copy } => write!(f, "MC {copy}"),
            ScriptOp::Shortcut { path } => {
                f.write_str("S ")?;
                write_labels(f, path)
            }
        }
    }
}

impl fmt::Display for BranchScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                let sep = if matches!(op, ScriptOp::MoveToCopy { .. }) { ";\n" } else { ", " };
                f.write_str(sep)?;
            }
            write!(f, "{op}")?;
        }
        if !self.ops.is_empty() {
            f.write_str(".\n")?;
        }
        Ok(())
    }
}

impl BranchScript {
    /// Every label mentioned.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut s = BTreeSet::new();
        for op in &self.ops {
            match op {
                ScriptOp::Orient { from, to } | ScriptOp::Branch { from, to, .. } => {
                    s.insert(*from);
                    s.insert(*to);
                }
                ScriptOp::Complete { cycle: v } | ScriptOp::Shortcut { path: v } => s.extend(v.iter().copied()),
                ScriptOp::MoveToCopy { .. } => {}
            }
        }
        s
    }
}

fn parse_labels(text: &str) -> Result<Vec<Label>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let bad = || Error::Parse(format!("bad vertex list `{}`", text.trim()));
    if tokens.is_empty() {
        return Err(bad());
    }
    if tokens.len() == 1 {
        tokens[0].chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    } else {
        tokens.iter().map(|t| t.parse().map_err(|_| bad())).collect()
    }
}

fn parse_op(chunk: &str) -> Result<ScriptOp> {
    let chunk = chunk.trim();
    let (head, rest) = match chunk.find(|c: char| !c.is_ascii_alphabetic()) {
        Some(i) => chunk.split_at(i),
        None => (chunk, ""),
    };
    let labels_n = |n: usize| -> Result<Vec<Label>> {
        let v = parse_labels(rest)?;
        if v.len() == n {
            Ok(v)
        } else {
            Err(Error::Parse(format!("`{chunk}`: expected {n} vertices")))
        }
    };
    match head {
        "O" => {
            let v = labels_n(2)?;
            Ok(ScriptOp::Orient { from: v[0], to: v[1] })
        }
        "B" => {
            let open = rest.find('(').ok_or_else(|| Error::Parse(format!("`{chunk}`: missing (NC name)")))?;
            let close = rest.rfind(')').filter(|&c| c > open).ok_or_else(|| Error::Parse(format!("`{chunk}`: unclosed (")))?;
            let v = parse_labels(&rest[..open])?;
            if v.len() != 2 {
                return Err(Error::Parse(format!("`{chunk}`: expected 2 vertices")));
            }
            let inner = rest[open + 1..close].trim();
            let copy = inner
                .strip_prefix("NC")
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Parse(format!("`{chunk}`: expected (NC name)")))?;
            Ok(ScriptOp::Branch { from: v[0], to: v[1], copy: copy.to_string() })
        }
        "C" => {
            let cycle = parse_labels(rest)?;
            if !(3..=4).contains(&cycle.len()) {
                return Err(Error::Parse(format!("`{chunk}`: a cycle has 3 or 4 vertices")));
            }
            Ok(ScriptOp::Complete { cycle })
        }
        "MC" => {
            let copy = rest.trim();
            if copy.is_empty() || copy.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("`{chunk}`: expected one copy name")));
            }
            Ok(ScriptOp::MoveToCopy { copy: copy.to_string() })
        }
        "S" => Ok(ScriptOp::Shortcut { path: labels_n(4)? }),
        _ => Err(Error::Parse(format!("unknown operation `{chunk}`"))),
    }
}

/// Parses the text format described in the module docs.
pub fn parse_script(text: &str) -> Result<BranchScript> {
    let cleaned = text.replace("\\item", " ").replace('$', "");
    let mut ops = Vec::new();
    for chunk in cleaned.split([',', ';', '.', '\n']) {
        let chunk = chunk.split('#').next().unwrap_or("").trim();
        if !chunk.is_empty() {
            ops.push(parse_op(chunk)?);
        }
    }
    Ok(BranchScript { ops })
}

impl std::str::FromStr for BranchScript {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_script(s)
    }
}

/// Assignment of script labels to graph vertices: `labels[i]` is the label of
/// vertex index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Labeling {
    pub labels: Vec<Label>,
}

impl Labeling {
    /// Labels equal to vertex ids.
    pub fn from_ids(g: &Graph) -> Self {
        Labeling { labels: g.ids().to_vec() }
    }

    /// Label of each vertex id.
    pub fn by_id(&self, g: &Graph) -> BTreeMap<VertexId, Label> {
        (0..g.n()).map(|u| (g.id(u), self.labels[u])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Every copy ended in a checked contradiction.
    Proven,
    /// The script ran out with copies still open.
    NotExhaustive { open: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub index: usize,
    pub op: String,
    pub copy: String,
    /// Arcs the step decided, as labels.
    pub decided: Vec<(Label, Label)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyRecord {
    pub name: String,
    /// Copy it was split from, with the arc it received.
    pub parent: Option<(String, (Label, Label))>,
    /// Step that closed it.
    pub closed_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub steps: Vec<StepOutcome>,
    pub copies: Vec<CopyRecord>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl ProofReport {
    pub fn proven(&self) -> bool {
        self.verdict == Verdict::Proven
    }
}

/// Name of the copy a script starts in.
pub const INITIAL_COPY: &str = "A";

struct Replay<'a> {
    g: &'a Graph,
    labels: &'a [Label],
    vertex_of: BTreeMap<Label, usize>,
    current: PartialOrientation,
    name: String,
    closed: bool,
    pending: BTreeMap<String, PartialOrientation>,
    copies: Vec<CopyRecord>,
    steps: Vec<StepOutcome>,
}

impl Replay<'_> {
    fn vertex(&self, l: Label) -> std::result::Result<usize, String> {
        self.vertex_of.get(&l).copied().ok_or_else(|| format!("label {l} is not assigned"))
    }

    fn edge(&self, a: Label, b: Label) -> std::result::Result<(usize, usize), String> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        if !self.g.adjacent(u, v) {
            return Err(format!("{a}{b} is not an edge"));
        }
        Ok((u, v))
    }

    fn open(&self) -> std::result::Result<(), String> {
        if self.closed {
            Err(format!("copy {} is already closed", self.name))
        } else {
            Ok(())
        }
    }

    fn arc_labels(&self, u: usize, v: usize) -> (Label, Label) {
        (self.labels[u], self.labels[v])
    }

    fn step(&mut self, index: usize, op: &ScriptOp) -> std::result::Result<Vec<(Label, Label)>, String> {
        match op {
            ScriptOp::Orient { from, to } => {
                if index != 0 {
                    return Err("O is only allowed as the first step".into());
                }
                let (u, v) = self.edge(*from, *to)?;
                self.current.orient(u, v).expect("empty orientation");
                Ok(vec![(*from, *to)])
            }
            ScriptOp::Branch { from, to, copy } => {
                self.open()?;
                let (u, v) = self.edge(*from, *to)?;
                let e = self.current.edge_index(u, v).unwrap();
                if self.current.state(e) != EdgeState::Undecided {
                    return Err(format!("{from}{to} is already oriented"));
                }
                if self.copies.iter().any(|c| &c.name == copy) {
                    return Err(format!("copy name {copy} is already used"));
                }
                let mut other = self.current.clone();
                other.orient(v, u).unwrap();
                self.current.orient(u, v).unwrap();
                self.pending.insert(copy.clone(), other);
                self.copies.push(CopyRecord {
                    name: copy.clone(),
                    parent: Some((self.name.clone(), (*to, *from))),
                    closed_at: None,
                });
                Ok(vec![(*from, *to)])
            }
            ScriptOp::Complete { cycle } => {
                self.open()?;
                self.complete(cycle)
            }
            ScriptOp::MoveToCopy { copy } => {
                if !self.closed {
                    return Err(format!("copy {} is still open", self.name));
                }
                let next = self.pending.remove(copy).ok_or_else(|| format!("no pending copy named {copy}"))?;
                self.current = next;
                self.name = copy.clone();
                self.closed = false;
                Ok(Vec::new())
            }
            ScriptOp::Shortcut { path } => {
                self.open()?;
                self.shortcut(path)?;
                self.closed = true;
                let name = self.name.clone();
                if let Some(c) = self.copies.iter_mut().find(|c| c.name == name) {
                    c.closed_at = Some(index);
                }
                Ok(Vec::new())
            }
        }
    }

    fn complete(&mut self, cycle: &[Label]) -> std::result::Result<Vec<(Label, Label)>, String> {
        let mut vs = Vec::with_capacity(cycle.len());
        for &l in cycle {
            vs.push(self.vertex(l)?);
        }
        let k = vs.len();
        let distinct: BTreeSet<usize> = vs.iter().copied().collect();
        if distinct.len() != k {
            return Err("repeated vertex".into());
        }
        for i in 0..k {
            self.edge(cycle[i], cycle[(i + 1) % k])?;
        }
        if k == 4 && self.edge(cycle[0], cycle[2]).is_ok() && self.edge(cycle[1], cycle[3]).is_ok() {
            return Err("the four vertices induce K4".into());
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        let (pairs, allowed) = local_completions(self.g, &sorted);
        let mut decided = 0u16;
        let mut value = 0u16;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let e = self.current.edge_index(a, b).unwrap();
            match self.current.state(e) {
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
            return Err("the partial orientation of this cycle already has no completion".into());
        }
        let mut out = Vec::new();
        for i in 0..k {
            let (a, b) = (vs[i], vs[(i + 1) % k]);
            let t = pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
            if decided & (1 << t) != 0 {
                continue;
            }
            let fw = options[0] & (1 << t) != 0;
            if options.iter().any(|m| (m & (1 << t) != 0) != fw) {
                let (x, y) = (self.labels[a], self.labels[b]);
                return Err(format!("orientation of {x}{y} is not forced"));
            }
            let (lo, hi) = pairs[t];
            let (u, v) = if fw { (lo, hi) } else { (hi, lo) };
            self.current.orient(u, v).unwrap();
            out.push(self.arc_labels(u, v));
        }
        Ok(out)
    }

    fn shortcut(&self, path: &[Label]) -> std::result::Result<(), String> {
        let mut vs = Vec::with_capacity(4);
        for &l in path {
            vs.push(self.vertex(l)?);
        }
        let distinct: BTreeSet<usize> = vs.iter().copied().collect();
        if distinct.len() != 4 {
            return Err("repeated vertex".into());
        }
        let arc = |i: usize, j: usize| self.current.has_arc(vs[i], vs[j]);
        let path_ok = arc(0, 1) && arc(1, 2) && arc(2, 3);
        if !path_ok {
            return Err(format!("{} is not a directed path", path.iter().map(|l| l.to_string()).collect::<String>()));
        }
        if arc(3, 0) {
            return Ok(());
        }
        if !arc(0, 3) {
            return Err("closing arc is missing".into());
        }
        // The chord a-c (or b-d) must be absent or point backwards.
        let blocked = |i: usize, j: usize| !self.g.adjacent(vs[i], vs[j]) || arc(j, i);
        if blocked(0, 2) || blocked(1, 3) {
            Ok(())
        } else {
            Err("every chord is present or still undecided".into())
        }
    }
}

/// Replays `script` on `g`. Steps that do not check out abort with
/// [`Error::InvalidStep`]; a script that runs out with open copies yields
/// [`Verdict::NotExhaustive`].
pub fn replay_script(g: &Graph, labeling: &Labeling, script: &BranchScript) -> Result<ProofReport> {
    let n = g.n();
    if labeling.labels.len() != n {
        return Err(Error::LabelingMismatch(format!("{} labels for {n} vertices", labeling.labels.len())));
    }
    let mut vertex_of = BTreeMap::new();
    for (u, &l) in labeling.labels.iter().enumerate() {
        if vertex_of.insert(l, u).is_some() {
            return Err(Error::LabelingMismatch(format!("label {l} used twice")));
        }
    }
    let universe = script.labels();
    if !universe.iter().all(|l| vertex_of.contains_key(l)) {
        return Err(Error::LabelingMismatch(format!("script labels {universe:?} are not all assigned")));
    }
    let mut r = Replay {
        g,
        labels: &labeling.labels,
        vertex_of,
        current: PartialOrientation::new(g.clone()),
        name: INITIAL_COPY.to_string(),
        closed: false,
        pending: BTreeMap::new(),
        copies: vec![CopyRecord { name: INITIAL_COPY.to_string(), parent: None, closed_at: None }],
        steps: Vec::new(),
    };
    for (index, op) in script.ops.iter().enumerate() {
        let copy = r.name.clone();
        let decided = r.step(index, op).map_err(|reason| Error::InvalidStep { index, reason: format!("`{op}`: {reason}") })?;
        r.steps.push(StepOutcome { index, op: op.to_string(), copy, decided });
    }
    let mut open: Vec<String> = r.pending.keys().cloned().collect();
    if !r.closed {
        open.insert(0, r.name.clone());
    }
    let verdict = if open.is_empty() { Verdict::Proven } else { Verdict::NotExhaustive { open } };
    Ok(ProofReport { steps: r.steps, copies: r.copies, verdict })
}

/// Largest graph [`infer_labeling`] will search.
pub const INFER_MAX_VERTICES: usize = 9;

/// First labeling, in lexicographic order of the label sequence over vertex
/// indices, under which `script` replays to [`Verdict::Proven`].
pub fn infer_labeling(g: &Graph, script: &BranchScript) -> Result<Option<Labeling>> {
    let n = g.n();
    if n > INFER_MAX_VERTICES {
        return Err(Error::SearchSpaceTooLarge(format!("labeling search supports at most {INFER_MAX_VERTICES} vertices")));
    }
    let universe: Vec<Label> = script.labels().into_iter().collect();
    if universe.len() != n {
        return Ok(None);
    }
    let mut labels = Vec::with_capacity(n);
    Ok(search_labelings(g, script, &universe, &mut labels, 0))
}

fn search_labelings(g: &Graph, script: &BranchScript, universe: &[Label], labels: &mut Vec<Label>, used: u32) -> Option<Labeling> {
    if labels.len() == universe.len() {
        let lab = Labeling { labels: labels.clone() };
        return match replay_script(g, &lab, script) {
            Ok(report) if report.proven() => Some(lab),
            _ => None,
        };
    }
    for (i, &l) in universe.iter().enumerate() {
        if used & (1 << i) != 0 {
            continue;
        }
        labels.push(l);
        if let Some(found) = search_labelings(g, script, universe, labels, used | (1 << i)) {
            return Some(found);
        }
        labels.pop();
    }
    None
}
