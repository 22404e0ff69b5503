use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use super::{forbidden_family, with_jobs, CellMode, VerifyOptions};
use crate::error::Result;
use crate::gccg::{build_gccg, enumerate_triangulations, GccSpec};
use crate::graph::bits::{bit, Bits};
use crate::graph::{are_isomorphic, canonical_form, Graph};
use crate::semitrans::semi_transitive_orientation;

/// Representability verdicts keyed by canonical certificate. Entries are
/// write-once: concurrent writers for the same key compute the same value.
#[derive(Default)]
pub struct VerdictMemo {
    map: DashMap<String, bool>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl VerdictMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonical certificate and representability of `g`.
    pub fn representable(&self, g: &Graph) -> (String, bool) {
        let cert = canonical_form(g).expect("census graphs are small").certificate;
        if let Some(v) = self.map.get(&cert) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return (cert, *v);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = semi_transitive_orientation(g).expect("census graphs are small").is_some();
        self.map.entry(cert.clone()).or_insert(v);
        (cert, v)
    }

    /// Cached verdict, without computing.
    pub fn get(&self, g: &Graph) -> Option<bool> {
        let cert = canonical_form(g).ok()?.certificate;
        self.map.get(&cert).map(|v| *v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub certificate: String,
    pub vertices: usize,
    pub edges: usize,
    /// First occurrence: the subgraph as induced in the triangulation with
    /// the lowest index in its isomorphism class.
    pub graph: Graph,
    pub spec_index: u64,
    pub spec: String,
    /// Catalog obstruction isomorphic to this class, if any.
    pub matches: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusStats {
    pub triangulations: u64,
    pub triangulation_classes: usize,
    pub subgraphs_examined: u64,
    pub distinct_subgraph_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub m: usize,
    pub n: usize,
    pub mode: CellMode,
    pub max_vertices: usize,
    pub classes: Vec<CensusEntry>,
    pub stats: CensusStats,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn connected(g: &Graph, mask: u64) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= g.neighbors(v) & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == mask
}

/// Minimal non-representable induced subgraphs on at most `max_vertices`
/// vertices over all full triangulations of `G_{m,n}`, one per isomorphism
/// class, sorted by size and certificate.
///
/// Only connected vertex sets are examined: a disconnected non-representable
/// graph has a non-representable component, so it is never minimal. By
/// heredity a non-representable set is minimal when every one-vertex
/// deletion is representable.
pub fn census_minimal(m: usize, n: usize, max_vertices: usize, opts: &VerifyOptions) -> Result<CensusReport> {
    census_with_memo(m, n, max_vertices, CellMode::Full, opts, &VerdictMemo::new())
}

/// [`census_minimal`] over full or partial triangulations, sharing `memo`.
pub fn census_with_memo(
    m: usize,
    n: usize,
    max_vertices: usize,
    mode: CellMode,
    opts: &VerifyOptions,
    memo: &VerdictMemo,
) -> Result<CensusReport> {
    let start = Instant::now();
    let spec = GccSpec::new(m, n)?;
    let gcc = build_gccg(spec)?;
    let stream = enumerate_triangulations(spec, mode == CellMode::Partial)?;
    let total = stream.total();

    // One representative per isomorphism class of triangulation, lowest index first.
    let mut reps: BTreeMap<String, (u64, String, Graph)> = BTreeMap::new();
    for (index, t) in stream {
        let g = gcc.apply_triangulation(&t)?;
        let cert = canonical_form(&g)?.certificate;
        reps.entry(cert).or_insert((index, t.to_string(), g));
    }
    let mut reps: Vec<_> = reps.into_values().collect();
    reps.sort_by_key(|r| r.0);

    let nv = spec.vertex_count();
    let masks: Vec<u64> = (1u64..(1u64 << nv)).filter(|m| m.count_ones() as usize <= max_vertices).collect();
    let examined = AtomicU64::new(0);
    let found: Vec<Vec<(String, u64, String, Graph)>> = with_jobs(opts.jobs, || {
        reps.par_iter()
            .map(|(index, text, g)| {
                let mut out = Vec::new();
                for &mask in &masks {
                    if !connected(g, mask) {
                        continue;
                    }
                    examined.fetch_add(1, Ordering::Relaxed);
                    let sub = g.induced(mask);
                    let (cert, rep) = memo.representable(&sub);
                    if rep {
                        continue;
                    }
                    let minimal = Bits(mask).all(|v| memo.representable(&g.induced(mask & !bit(v))).1);
                    if minimal {
                        out.push((cert, *index, text.clone(), sub));
                    }
                }
                out
            })
            .collect()
    })?;

    let known = forbidden_family(m);
    let mut classes: BTreeMap<String, CensusEntry> = BTreeMap::new();
    for (cert, spec_index, spec_text, graph) in found.into_iter().flatten() {
        classes.entry(cert.clone()).or_insert_with(|| {
            let matches = known
                .iter()
                .find(|k| are_isomorphic(&k.graph, &graph).unwrap_or(false))
                .map(|k| k.name.clone());
            CensusEntry {
                certificate: cert,
                vertices: graph.n(),
                edges: graph.edge_count(),
                graph,
                spec_index,
                spec: spec_text,
                matches,
            }
        });
    }
    let mut classes: Vec<CensusEntry> = classes.into_values().collect();
    classes.sort_by(|a, b| (a.vertices, a.edges, &a.certificate).cmp(&(b.vertices, b.edges, &b.certificate)));
    Ok(CensusReport {
        m,
        n,
        mode,
        max_vertices,
        stats: CensusStats {
            triangulations: total,
            triangulation_classes: reps.len(),
            subgraphs_examined: examined.into_inner(),
            distinct_subgraph_classes: memo.len(),
        },
        classes,
        wall_time: start.elapsed(),
    })
}
