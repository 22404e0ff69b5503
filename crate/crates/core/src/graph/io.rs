//! JSON and DOT formats.
//!
//! JSON: `{"vertices":[...],"edges":[[u,v],...],"arcs":[[u,v],...]?,"names":{"id":"name"}?}`,
//! written compactly on one line with vertices in graph order and edges/arcs
//! in index order, so a parse/serialize round trip is byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Digraph, Graph, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vertices: Vec<VertexId>,
    #[serde(default)]
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arcs: Option<Vec<[VertexId; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    names: BTreeMap<VertexId, String>,
}

/// A parsed file: either an undirected graph or a digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDocument {
    Graph(Graph),
    Digraph(Digraph),
}

impl GraphDocument {
    pub fn underlying(&self) -> &Graph {
        match self {
            GraphDocument::Graph(g) => g,
            GraphDocument::Digraph(d) => d.underlying(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            GraphDocument::Graph(g) => graph_to_json(g),
            GraphDocument::Digraph(d) => digraph_to_json(d),
        }
    }
}

fn doc_edges(g: &Graph) -> Vec<[VertexId; 2]> {
    g.edges().into_iter().map(|(u, v)| [g.id(u), g.id(v)]).collect()
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = Document { vertices: g.ids().to_vec(), edges: doc_edges(g), arcs: None, names: g.names().clone() };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn digraph_to_json(d: &Digraph) -> String {
    let g = d.underlying();
    let arcs = d.id_arcs().into_iter().map(|(a, b)| [a, b]).collect();
    let doc = Document { vertices: g.ids().to_vec(), edges: doc_edges(g), arcs: Some(arcs), names: g.names().clone() };
    serde_json::to_string(&doc).expect("serializable")
}

/// Serializes as the document format.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: serde_json::Value = serde_json::from_str(&graph_to_json(self)).expect("valid json");
        v.serialize(s)
    }
}

impl serde::Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: serde_json::Value =
            serde_json::from_str(&digraph_to_json(self)).expect("valid json");
        v.serialize(s)
    }
}

pub fn parse_document(text: &str) -> Result<GraphDocument> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut g = Graph::with_ids(doc.vertices.clone())?;
    for [a, b] in &doc.edges {
        let u = g.index_of(*a).ok_or(Error::UnknownVertex(*a))?;
        let v = g.index_of(*b).ok_or(Error::UnknownVertex(*b))?;
        g.add_edge(u, v)?;
    }
    for (id, name) in &doc.names {
        let u = g.index_of(*id).ok_or(Error::UnknownVertex(*id))?;
        g.set_name(u, name.clone());
    }
    match doc.arcs {
        None => Ok(GraphDocument::Graph(g)),
        Some(arcs) => {
            let declared = g.clone();
            let mut bare = declared.clone();
            for (u, v) in declared.edges() {
                bare.remove_edge(u, v);
            }
            let mut idx = Vec::with_capacity(arcs.len());
            for [a, b] in &arcs {
                let u = g.index_of(*a).ok_or(Error::UnknownVertex(*a))?;
                let v = g.index_of(*b).ok_or(Error::UnknownVertex(*b))?;
                idx.push((u, v));
            }
            let d = Digraph::from_arcs(bare, &idx)?;
            if !doc.edges.is_empty() && d.underlying() != &declared {
                return Err(Error::Parse("\"edges\" disagree with \"arcs\"".into()));
            }
            Ok(GraphDocument::Digraph(d))
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    match parse_document(text)? {
        GraphDocument::Graph(g) => Ok(g),
        GraphDocument::Digraph(d) => Ok(d.underlying().clone()),
    }
}

pub fn digraph_from_json(text: &str) -> Result<Digraph> {
    match parse_document(text)? {
        GraphDocument::Digraph(d) => Ok(d),
        GraphDocument::Graph(_) => Err(Error::Parse("expected \"arcs\"".into())),
    }
}

fn dot_node(g: &Graph, u: usize, out: &mut String) {
    let _ = write!(out, "  {}", g.id(u));
    if let Some(name) = g.name(u) {
        let _ = write!(out, " [label=\"{}\"]", name.replace('"', "\\\""));
    }
    out.push_str(";\n");
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for u in 0..g.n() {
        dot_node(g, u, &mut s);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {} -- {};", g.id(u), g.id(v));
    }
    s.push_str("}\n");
    s
}

pub fn digraph_to_dot(d: &Digraph) -> String {
    let g = d.underlying();
    let mut s = String::from("digraph G {\n");
    for u in 0..g.n() {
        dot_node(g, u, &mut s);
    }
    for (a, b) in d.id_arcs() {
        let _ = writeln!(s, "  {a} -> {b};");
    }
    s.push_str("}\n");
    s
}
