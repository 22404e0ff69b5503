//! Named fixtures: wheels, the six minimal obstructions for three sectors,
//! the oriented induction bases and their one-layer extensions, and a few
//! worked examples. File-backed fixtures live in the workspace `catalog/`
//! directory and are embedded at compile time.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::io::{digraph_from_json, graph_from_json, GraphDocument};
use crate::graph::{Digraph, Graph, VertexId};
use crate::semitrans::{parse_script, BranchScript};
use crate::words::Word;

macro_rules! fixture_file {
    ($name:literal) => {
        ($name, include_str!(concat!("../../../catalog/", $name, ".json")))
    };
}

const FILES: &[(&str, &str)] = &[
    fixture_file!("F1"),
    fixture_file!("F2"),
    fixture_file!("F3"),
    fixture_file!("F4"),
    fixture_file!("F5"),
    fixture_file!("F6"),
    fixture_file!("M1"),
    fixture_file!("N1"),
    fixture_file!("N2"),
    fixture_file!("P1"),
    fixture_file!("P2"),
    fixture_file!("M1ext"),
    fixture_file!("N11"),
    fixture_file!("N12"),
    fixture_file!("N21"),
    fixture_file!("N22"),
    fixture_file!("P11"),
    fixture_file!("P12"),
    fixture_file!("P21"),
    fixture_file!("P22"),
    fixture_file!("orientation-o-figure"),
    fixture_file!("shortcut-figure"),
    fixture_file!("c4"),
];

/// Branching proof for F2 as printed, preceded by the starting arc `1 -> 3`.
pub const F2_SCRIPT: &str = include_str!("../../../catalog/F2.script");

/// Word representing the 4-cycle fixture `c4`.
pub const C4_WORD: &str = "134231241";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedDigraph {
    pub name: String,
    pub digraph: Digraph,
}

/// A 12-vertex extension of a 9-vertex base by one outer layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub name: String,
    pub digraph: Digraph,
    /// Base it extends (its vertices 1..9).
    pub base: String,
    /// Base its two outer layers (vertices 4..12) are claimed to reproduce.
    pub outer: String,
}

fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn load_graph(name: &str) -> Graph {
    graph_from_json(file(name).expect("shipped fixture")).expect("shipped fixture parses")
}

fn load_digraph(name: &str) -> Digraph {
    digraph_from_json(file(name).expect("shipped fixture")).expect("shipped fixture parses")
}

/// Cycle on ids `1..=k`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::UnsupportedCombination(format!("a cycle needs at least 3 vertices, got {k}")));
    }
    let ids: Vec<VertexId> = (1..=k as VertexId).collect();
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let mut g = Graph::with_ids(ids)?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Wheel: rim `1..=k` in cyclic order, hub `k + 1`.
pub fn wheel(k: usize) -> Result<Graph> {
    let mut g = cycle(k)?;
    let mut ids = g.ids().to_vec();
    ids.push(k as VertexId + 1);
    let mut w = Graph::with_ids(ids)?;
    for (u, v) in g.edges() {
        w.add_edge(u, v)?;
    }
    for u in 0..k {
        w.add_edge(u, k)?;
    }
    g = w;
    Ok(g)
}

/// F1..F6.
pub fn forbidden_three_sector() -> Vec<NamedGraph> {
    (1..=6)
        .map(|i| {
            let name = format!("F{i}");
            NamedGraph { graph: load_graph(&name), name }
        })
        .collect()
}

/// W5 and W7.
pub fn forbidden_wheels() -> Vec<NamedGraph> {
    [5, 7].iter().map(|&k| NamedGraph { name: format!("W{k}"), graph: wheel(k).expect("k >= 3") }).collect()
}

pub const BASE_NAMES: [&str; 5] = ["M1", "N1", "N2", "P1", "P2"];

/// Oriented 9-vertex bases; vertex `k` sits on level `(k-1) / 3`, line `(k-1) % 3`.
pub fn base_oriented() -> Vec<NamedDigraph> {
    BASE_NAMES.iter().map(|n| NamedDigraph { name: n.to_string(), digraph: load_digraph(n) }).collect()
}

const EXTENSION_TABLE: [(&str, &str, &str); 9] = [
    ("M1ext", "M1", "M1"),
    ("N11", "N1", "N1"),
    ("N12", "N1", "P1"),
    ("N21", "N2", "N2"),
    ("N22", "N2", "P2"),
    ("P11", "P1", "P2"),
    ("P12", "P1", "N2"),
    ("P21", "P2", "P1"),
    ("P22", "P2", "N1"),
];

pub fn extensions() -> Vec<Extension> {
    EXTENSION_TABLE
        .iter()
        .map(|(name, base, outer)| Extension {
            name: name.to_string(),
            digraph: load_digraph(name),
            base: base.to_string(),
            outer: outer.to_string(),
        })
        .collect()
}

/// The oriented bases with their extensions, as consumed by the induction-step verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionCatalog {
    pub bases: Vec<NamedDigraph>,
    pub extensions: Vec<Extension>,
}

impl InductionCatalog {
    pub fn shipped() -> Self {
        InductionCatalog { bases: base_oriented(), extensions: extensions() }
    }
}

/// The 20-vertex digraph drawn for orientation O (five sectors, four levels).
pub fn orientation_o_figure() -> NamedDigraph {
    NamedDigraph { name: "orientation-o-figure".into(), digraph: load_digraph("orientation-o-figure") }
}

pub fn shortcut_figure() -> NamedDigraph {
    NamedDigraph { name: "shortcut-figure".into(), digraph: load_digraph("shortcut-figure") }
}

/// The 4-cycle and a word representing it.
pub fn c4_with_word() -> (Graph, Word) {
    (load_graph("c4"), Word::parse_inline(C4_WORD, true).expect("valid word"))
}

pub fn f2_script() -> BranchScript {
    parse_script(F2_SCRIPT).expect("shipped script parses")
}

/// All fixture names: the file-backed ones, then `W3`..`W9` and `C3`..`C9`.
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = FILES.iter().map(|(n, _)| n.to_string()).collect();
    v.extend((3..=9).map(|k| format!("W{k}")));
    v.extend((3..=9).map(|k| format!("C{k}")));
    v
}

fn generated(name: &str) -> Option<Result<Graph>> {
    let (kind, k) = name.split_at(1);
    let k: usize = k.parse().ok()?;
    match kind {
        "W" => Some(wheel(k)),
        "C" => Some(cycle(k)),
        _ => None,
    }
}

/// A fixture by name.
pub fn fixture(name: &str) -> Result<GraphDocument> {
    if let Some(text) = file(name) {
        return crate::graph::io::parse_document(text);
    }
    match generated(name) {
        Some(g) => Ok(GraphDocument::Graph(g?)),
        None => Err(Error::UnknownFixture(name.to_string())),
    }
}

/// A fixture as JSON; file-backed fixtures come back byte-for-byte.
pub fn fixture_json(name: &str) -> Result<String> {
    if let Some(text) = file(name) {
        return Ok(text.to_string());
    }
    Ok(fixture(name)?.to_json() + "\n")
}
