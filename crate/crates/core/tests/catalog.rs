mod common;

use common::*;
use wordrep_core::catalog::{self, base_oriented, extensions, forbidden_three_sector, wheel, InductionCatalog};
use wordrep_core::graph::io::{parse_document, GraphDocument};
use wordrep_core::graph::{are_isomorphic, contains_induced as lib_contains, digraph_isomorphism, is_semi_transitive, Digraph, Graph};
use wordrep_core::semitrans::semi_transitive_orientation;

fn arcs_matrix(d: &Digraph) -> Matrix {
    (0..d.n()).map(|u| (0..d.n()).map(|v| d.has_arc(u, v)).collect()).collect()
}

fn edges_by_id(g: &Graph) -> Vec<(u32, u32)> {
    let mut e: Vec<(u32, u32)> = g.edges().iter().map(|&(a, b)| (g.id(a).min(g.id(b)), g.id(a).max(g.id(b)))).collect();
    e.sort();
    e
}

#[test]
fn f2_matches_its_edge_list() {
    let f2 = &forbidden_three_sector()[1].graph;
    // a..g are ids 0..6.
    let listed = "ab bc ca ae ce ef bf af fd de cd bd dg fg eg";
    let mut want: Vec<(u32, u32)> = listed
        .split_whitespace()
        .map(|p| {
            let b = p.as_bytes();
            let (x, y) = ((b[0] - b'a') as u32, (b[1] - b'a') as u32);
            (x.min(y), x.max(y))
        })
        .collect();
    want.sort();
    assert_eq!(edges_by_id(f2), want);
}

#[test]
fn m1_matches_its_arc_list() {
    let m1 = &base_oriented()[0].digraph;
    let listed = "12 13 14 15 23 25 26 36 43 45 46 47 48 56 58 59 69 76 78 79 89";
    let mut want: Vec<(u32, u32)> =
        listed.split_whitespace().map(|p| ((p.as_bytes()[0] - b'0') as u32, (p.as_bytes()[1] - b'0') as u32)).collect();
    want.sort();
    let mut got = m1.id_arcs();
    got.sort();
    assert_eq!(got, want);
    assert!(is_semi_transitive(m1).holds());
}

#[test]
fn forbidden_graphs_are_minimal_obstructions() {
    for f in forbidden_three_sector() {
        assert!(semi_transitive_orientation(&f.graph).unwrap().is_none(), "{} has an orientation", f.name);
        for v in 0..f.graph.n() {
            let h = f.graph.without_vertex(v);
            let d = semi_transitive_orientation(&h).unwrap();
            let d = d.unwrap_or_else(|| panic!("{} minus {} is not representable", f.name, f.graph.label(v)));
            assert!(semi_transitive(&arcs_matrix(&d)));
        }
    }
}

#[test]
fn smallest_forbidden_graphs_agree_with_exhaustive_orientations() {
    // F1 and F2 have at most 15 edges; try every orientation.
    for f in &forbidden_three_sector()[..2] {
        assert_eq!(count_orientations(&matrix(&f.graph)), 0, "{}", f.name);
    }
}

#[test]
fn forbidden_graphs_form_an_antichain() {
    let fs = forbidden_three_sector();
    for (i, a) in fs.iter().enumerate() {
        for (j, b) in fs.iter().enumerate() {
            if i == j {
                continue;
            }
            assert!(!are_isomorphic(&a.graph, &b.graph).unwrap(), "{} ~ {}", a.name, b.name);
            let oracle = contains_induced(&matrix(&b.graph), &matrix(&a.graph));
            assert!(!oracle, "{} inside {}", a.name, b.name);
            assert!(lib_contains(&b.graph, &a.graph).is_none());
        }
    }
}

#[test]
fn all_named_digraphs_are_semi_transitive() {
    let mut ds: Vec<(String, Digraph)> = base_oriented().into_iter().map(|b| (b.name, b.digraph)).collect();
    ds.extend(extensions().into_iter().map(|e| (e.name, e.digraph)));
    ds.push(("orientation-o-figure".into(), catalog::orientation_o_figure().digraph));
    for (name, d) in ds {
        assert!(is_semi_transitive(&d).holds(), "{name}");
        if d.n() <= 12 {
            assert!(semi_transitive(&arcs_matrix(&d)), "{name}");
        }
    }
}

#[test]
fn shortcut_figure_is_a_shortcut() {
    let d = catalog::shortcut_figure().digraph;
    assert!(has_shortcut(&arcs_matrix(&d)));
    assert!(!has_cycle(&arcs_matrix(&d)));
    assert!(!is_semi_transitive(&d).holds());
}

#[test]
fn outer_layers_recur_as_claimed() {
    let bases = base_oriented();
    for e in extensions() {
        let mask = (0..12).filter(|&v| e.digraph.underlying().id(v) >= 4).fold(0u64, |a, v| a | 1 << v);
        let outer = e.digraph.induced(mask);
        let base = bases.iter().find(|b| b.name == e.outer).unwrap();
        assert!(digraph_isomorphism(&outer, &base.digraph).is_some(), "{} -> {}", e.name, e.outer);
        let inner = e.digraph.induced((1 << 9) - 1);
        let parent = bases.iter().find(|b| b.name == e.base).unwrap();
        assert_eq!(inner.id_arcs(), parent.digraph.id_arcs(), "{} extends {}", e.name, e.base);
    }
}

#[test]
fn base_underlying_graphs_are_three_classes() {
    let bases = base_oriented();
    let iso = |a: usize, b: usize| are_isomorphic(bases[a].digraph.underlying(), bases[b].digraph.underlying()).unwrap();
    // M1, N1, N2, P1, P2
    assert!(iso(1, 2) && iso(3, 4));
    assert!(!iso(0, 1) && !iso(0, 3) && !iso(1, 3));
}

#[test]
fn wheels() {
    let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert!(are_isomorphic(&wheel(3).unwrap(), &k4).unwrap());
    for (k, rep) in [(4, true), (5, false), (6, true), (7, false), (8, true), (9, false)] {
        let w = wheel(k).unwrap();
        assert_eq!((w.n(), w.edge_count()), (k + 1, 2 * k));
        assert_eq!(semi_transitive_orientation(&w).unwrap().is_some(), rep, "W{k}");
    }
}

#[test]
fn every_fixture_loads_and_round_trips() {
    for name in catalog::names() {
        let json = catalog::fixture_json(&name).unwrap();
        let doc = parse_document(&json).unwrap();
        assert_eq!(doc.to_json() + "\n", json, "{name}");
        if let GraphDocument::Digraph(d) = doc {
            assert_eq!(d.arc_count(), d.underlying().edge_count());
        }
    }
}

#[test]
fn shipped_induction_catalog_is_complete() {
    let c = InductionCatalog::shipped();
    assert_eq!(c.bases.len(), 5);
    assert_eq!(c.extensions.len(), 9);
}
