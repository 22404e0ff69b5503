use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::Serialize;

use super::{find_obstruction, Check, VerificationReport};
use crate::catalog::{forbidden_three_sector, InductionCatalog, NamedDigraph};
use crate::gccg::{build_gccg, CellChoice, GccGraph, GccSpec, TriangulationSpec};
use crate::graph::{canonical_form, digraph_isomorphism, is_semi_transitive, Digraph, Graph, SemiTransitivity, VertexId};

/// Extension counts claimed for the three base triangulations.
const EXPECTED_COUNTS: [(&str, usize); 3] = [("M", 1), ("N", 2), ("P", 2)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCount {
    /// Base triangulation class: the base name without its orientation suffix.
    pub class: String,
    /// Base spec on `G_{3,2}`.
    pub base_spec: String,
    /// Outer-layer choices whose `G_{3,3}` triangulation is free of F1..F6.
    pub forbidden_free: Vec<String>,
    /// The same choices grouped by isomorphism class of the extended graph.
    pub classes: Vec<Vec<String>>,
}

/// Spec of `G_{3,2}` whose triangulation is `g` under `id k -> vertex k - 1`.
fn base_spec(gcc: &GccGraph, g: &Graph) -> Option<TriangulationSpec> {
    let spec = gcc.spec;
    if g.n() != spec.vertex_count() {
        return None;
    }
    let idx = |v: usize| g.index_of(v as VertexId + 1);
    let mut cells = Vec::new();
    for i in 0..spec.n {
        for j in 0..spec.m {
            let pick = [CellChoice::Main, CellChoice::Anti].into_iter().find(|&c| {
                let (a, b) = gcc.diagonal(i, j, c).expect("diagonal");
                matches!((idx(a), idx(b)), (Some(a), Some(b)) if g.adjacent(a, b))
            })?;
            cells.push(pick);
        }
    }
    let t = TriangulationSpec { cells };
    let built = gcc.apply_triangulation(&t).ok()?;
    let same = built.edges().iter().all(|&(a, b)| matches!((idx(a), idx(b)), (Some(x), Some(y)) if g.adjacent(x, y)))
        && built.edge_count() == g.edge_count();
    same.then_some(t)
}

fn class_of(name: &str) -> String {
    name.chars().take_while(|c| c.is_ascii_alphabetic()).collect()
}

/// For each base triangulation class in the catalog, the one-layer
/// extensions that stay free of F1..F6. Extensions are counted up to
/// isomorphism of the extended graph: for M the two forbidden-free outer
/// layers give isomorphic graphs.
pub fn extension_counts(catalog: &InductionCatalog) -> Result<Vec<ExtensionCount>, String> {
    let inner = build_gccg(GccSpec { m: 3, n: 2 }).expect("valid");
    let outer = build_gccg(GccSpec { m: 3, n: 3 }).expect("valid");
    let forbidden = forbidden_three_sector();
    let mut by_class: BTreeMap<String, ExtensionCount> = BTreeMap::new();
    for b in &catalog.bases {
        let t = base_spec(&inner, b.digraph.underlying())
            .ok_or_else(|| format!("{} is not a full triangulation of the three-sector, two-layer grid", b.name))?;
        let class = class_of(&b.name);
        if let Some(prev) = by_class.get(&class) {
            if prev.base_spec != t.to_string() {
                return Err(format!("{} triangulates {} differently from its class", b.name, class));
            }
            continue;
        }
        let mut free = Vec::new();
        let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for outer_bits in 0..8u32 {
            let mut cells = t.cells.clone();
            cells.extend((0..3).map(|j| if outer_bits >> (2 - j) & 1 == 0 { CellChoice::Main } else { CellChoice::Anti }));
            let ext = TriangulationSpec { cells };
            let g = outer.apply_triangulation(&ext).expect("sized");
            if find_obstruction(&g, &forbidden).is_none() {
                let choice = ext.to_string()[6..].to_string();
                let cert = canonical_form(&g).expect("small").certificate;
                classes.entry(cert).or_default().push(choice.clone());
                free.push(choice);
            }
        }
        let mut classes: Vec<Vec<String>> = classes.into_values().collect();
        classes.sort();
        by_class.insert(class.clone(), ExtensionCount { class, base_spec: t.to_string(), forbidden_free: free, classes });
    }
    Ok(by_class.into_values().collect())
}

fn restrict(d: &Digraph, ids: std::ops::RangeInclusive<VertexId>) -> Digraph {
    let mask = (0..d.n()).filter(|&v| ids.contains(&d.underlying().id(v))).fold(0u64, |a, v| a | (1u64 << v));
    d.induced(mask)
}

fn arc_set(d: &Digraph) -> BTreeSet<(VertexId, VertexId)> {
    d.id_arcs().into_iter().collect()
}

/// Checks the induction step against `catalog`:
/// 1. every base triangulation class has exactly the claimed number of
///    forbidden-free one-layer extensions, and the catalog lists, for each
///    oriented base, one oriented extension per such triangulation;
/// 2. every oriented extension is semi-transitive;
/// 3. the outer two layers of every extension reproduce the claimed base, and
///    the claimed bases are exactly the catalog's bases.
pub fn verify_inductive_step(catalog: &InductionCatalog) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("inductive-step");
    report.checks.push(check_counts(catalog));
    report.checks.push(check_semi_transitive(catalog));
    report.checks.push(check_recurrence(catalog));
    report.totals.enumerated = catalog.extensions.len() as u64;
    report.wall_time = start.elapsed();
    report
}

fn check_counts(catalog: &InductionCatalog) -> Check {
    const NAME: &str = "extension-counts";
    let counts = match extension_counts(catalog) {
        Ok(c) => c,
        Err(e) => return Check::new(NAME, false, e),
    };
    let mut problems = Vec::new();
    for (class, want) in EXPECTED_COUNTS {
        match counts.iter().find(|c| c.class == class) {
            None => problems.push(format!("no base of class {class}")),
            Some(c) if c.classes.len() != want => problems.push(format!(
                "{class} has {} classes of forbidden-free extensions {:?}, expected {want}",
                c.classes.len(),
                c.classes
            )),
            Some(_) => {}
        }
    }
    let outer = build_gccg(GccSpec { m: 3, n: 3 }).expect("valid");
    for base in &catalog.bases {
        let Some(count) = counts.iter().find(|c| c.class == class_of(&base.name)) else { continue };
        let mut listed = Vec::new();
        for ext in catalog.extensions.iter().filter(|e| e.base == base.name) {
            if arc_set(&restrict(&ext.digraph, 1..=9)) != arc_set(&base.digraph) {
                problems.push(format!("{} does not restrict to {} on vertices 1..9", ext.name, base.name));
            }
            match base_spec(&outer, ext.digraph.underlying()) {
                Some(t) => listed.push(t.to_string()[6..].to_string()),
                None => problems.push(format!("{} is not a triangulation of the three-layer grid", ext.name)),
            }
        }
        // Exactly one listed extension per isomorphism class.
        let hits: Vec<usize> =
            count.classes.iter().map(|cl| listed.iter().filter(|x| cl.contains(x)).count()).collect();
        let stray = listed.iter().filter(|x| !count.forbidden_free.contains(x)).count();
        if stray > 0 || hits.iter().any(|&h| h != 1) {
            problems.push(format!(
                "{} lists extensions {listed:?}, expected one from each of {:?}",
                base.name, count.classes
            ));
        }
    }
    let summary: Vec<String> = counts.iter().map(|c| format!("{}:{}", c.class, c.classes.len())).collect();
    if problems.is_empty() {
        Check::new(NAME, true, summary.join(" "))
    } else {
        Check::new(NAME, false, problems.join("; "))
    }
}

fn check_semi_transitive(catalog: &InductionCatalog) -> Check {
    let mut problems = Vec::new();
    for ext in &catalog.extensions {
        let d = &ext.digraph;
        let ids = |vs: &[usize]| vs.iter().map(|&v| d.underlying().id(v)).collect::<Vec<VertexId>>();
        let why = match is_semi_transitive(d) {
            SemiTransitivity::SemiTransitive { .. } => continue,
            SemiTransitivity::Cycle { cycle } => format!("{}: directed cycle {:?}", ext.name, ids(&cycle)),
            SemiTransitivity::Shortcut { witness } => {
                let (path, (a, b)) = witness.to_ids(d);
                format!("{}: shortcut along {path:?}, arc {a}->{b} missing", ext.name)
            }
        };
        problems.push(why);
    }
    Check::new(
        "extensions-semi-transitive",
        problems.is_empty(),
        if problems.is_empty() { format!("{} extensions", catalog.extensions.len()) } else { problems.join("; ") },
    )
}

fn check_recurrence(catalog: &InductionCatalog) -> Check {
    let mut problems = Vec::new();
    let bases: BTreeMap<&str, &NamedDigraph> = catalog.bases.iter().map(|b| (b.name.as_str(), b)).collect();
    let mut reached = BTreeSet::new();
    for ext in &catalog.extensions {
        let Some(target) = bases.get(ext.outer.as_str()) else {
            problems.push(format!("{} claims unknown base {}", ext.name, ext.outer));
            continue;
        };
        let outer = restrict(&ext.digraph, 4..=12);
        if digraph_isomorphism(&outer, &target.digraph).is_some() {
            reached.insert(ext.outer.as_str());
        } else {
            problems.push(format!("outer two layers of {} are not isomorphic to {}", ext.name, ext.outer));
        }
    }
    for name in bases.keys() {
        if !reached.contains(name) {
            problems.push(format!("no extension reproduces {name}"));
        }
    }
    Check::new(
        "outer-layers-recur",
        problems.is_empty(),
        if problems.is_empty() { format!("closed over {:?}", bases.keys().collect::<Vec<_>>()) } else { problems.join("; ") },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_passes() {
        let r = verify_inductive_step(&InductionCatalog::shipped());
        assert!(r.passed(), "{:#?}", r.checks);
    }

    #[test]
    fn deleting_an_extension_breaks_counts() {
        let mut c = InductionCatalog::shipped();
        c.extensions.retain(|e| e.name != "N12");
        let r = verify_inductive_step(&c);
        assert!(!r.checks[0].passed);
        assert!(r.checks[1].passed);
    }
}
