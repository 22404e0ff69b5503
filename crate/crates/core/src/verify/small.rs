use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{Check, VerificationReport};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, Graph};
use crate::semitrans::semi_transitive_orientation;
use crate::words::find_uniform_word;

/// Largest vertex count cross-validated without an explicit override.
pub const CROSS_VALIDATE_MAX_VERTICES: usize = 5;

/// Largest uniformity tried by the word search.
const MAX_UNIFORMITY: usize = 3;

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, ordered by certificate. Enumerates all `2^(n(n-1)/2)` labeled
/// graphs, so keep `n` small.
pub fn all_graph_classes(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(Error::SizeLimitExceeded(format!("class enumeration supports at most 7 vertices, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut classes = BTreeMap::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges)?;
        classes.entry(canonical_form(&g)?.certificate).or_insert(g);
    }
    Ok(classes.into_values().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct ClassVerdict {
    orientation: bool,
    uniformity: Option<usize>,
}

fn judge(g: &Graph) -> ClassVerdict {
    let orientation = semi_transitive_orientation(g).expect("small graph").is_some();
    let uniformity = (1..=MAX_UNIFORMITY).find(|&k| find_uniform_word(g, k).expect("small graph").is_some());
    ClassVerdict { orientation, uniformity }
}

/// For every graph class on `1..=max_v` vertices, compares the orientation
/// decision with a search for a `k`-uniform representing word, `k <= 3`.
///
/// A class where exactly one side succeeds is a counterexample. Classes
/// where both fail are consistent and listed as a note. Above five vertices
/// `allow_larger` must be set.
pub fn cross_validate_small_graphs(max_v: usize, allow_larger: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    if max_v > CROSS_VALIDATE_MAX_VERTICES && !allow_larger {
        return Err(Error::SizeLimitExceeded(format!(
            "cross-validation runs up to {CROSS_VALIDATE_MAX_VERTICES} vertices unless overridden, got {max_v}"
        )));
    }
    let mut report = VerificationReport::new("cross-validate");
    report.n = Some(max_v);
    let mut mismatches = Vec::new();
    let mut both_absent = Vec::new();
    let mut per_size = Vec::new();
    for n in 1..=max_v {
        let classes = all_graph_classes(n)?;
        let verdicts: Vec<ClassVerdict> = classes.par_iter().map(judge).collect();
        per_size.push(format!("{n}:{}", classes.len()));
        for (g, v) in classes.iter().zip(&verdicts) {
            report.totals.enumerated += 1;
            report.totals.representable += v.orientation as u64;
            report.totals.forbidden_free += v.uniformity.is_some() as u64;
            let label = format!("{} vertices, edges {:?}", g.n(), g.edges());
            match (v.orientation, v.uniformity.is_some()) {
                (true, true) => {}
                (false, false) => both_absent.push(label),
                _ => mismatches.push(format!("{label}: orientation {}, word {:?}", v.orientation, v.uniformity)),
            }
        }
    }
    report.checks.push(Check::new("classes-per-size", true, per_size.join(" ")));
    report.checks.push(Check::new(
        "orientation-matches-word",
        mismatches.is_empty(),
        if mismatches.is_empty() { "no disagreements".to_string() } else { mismatches.join("; ") },
    ));
    report.checks.push(Check::new(
        "non-representable",
        true,
        if both_absent.is_empty() { "none".to_string() } else { both_absent.join("; ") },
    ));
    report.wall_time = start.elapsed();
    Ok(report)
}
