mod common;

use common::*;
use proptest::prelude::*;
use wordrep_core::gccg::{build_gccg, k_colorable, orient_by_coloring, CellChoice, GccSpec, TriangulationSpec};
use wordrep_core::graph::{canonical_form, contains_induced as lib_contains, find_shortcut, is_acyclic, is_semi_transitive, Digraph, Graph};
use wordrep_core::semitrans::{count_semi_transitive, propagate, semi_transitive_orientation, PartialOrientation};
use wordrep_core::words::{find_uniform_word, represents, Word};

fn digraph_of(g: &Graph, arc: &Matrix) -> Digraph {
    let arcs: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| if arc[u][v] { (u, v) } else { (v, u) }).collect();
    Digraph::from_arcs(g.clone(), &arcs).unwrap()
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn semi_transitivity_matches_path_oracle(g in arb_graph(7), bits in any::<u64>()) {
        let edges = edge_list(&matrix(&g));
        let arc = orientation(g.n(), &edges, bits);
        let d = digraph_of(&g, &arc);
        prop_assert_eq!(is_semi_transitive(&d).holds(), semi_transitive(&arc));
        prop_assert_eq!(is_acyclic(&d).is_none(), has_cycle(&arc));
        if !has_cycle(&arc) {
            let w = find_shortcut(&d).unwrap();
            prop_assert_eq!(w.is_some(), has_shortcut(&arc));
            if let Some(w) = w {
                prop_assert!(w.validate(&d));
            }
        }
    }

    #[test]
    fn induced_containment_matches_oracle(host in arb_graph(7), pattern in arb_graph(4)) {
        let found = lib_contains(&host, &pattern);
        prop_assert_eq!(found.is_some(), contains_induced(&matrix(&host), &matrix(&pattern)));
        if let Some(e) = found {
            prop_assert!(e.is_valid(&host, &pattern));
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant((g, perm) in graph_and_permutation(7)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap().certificate, canonical_form(&h).unwrap().certificate);
    }

    #[test]
    fn certificates_separate_classes(a in arb_graph(5), b in arb_graph(5)) {
        prop_assume!(a.n() == b.n());
        let same_cert = canonical_form(&a).unwrap().certificate == canonical_form(&b).unwrap().certificate;
        prop_assert_eq!(same_cert, canonical_string(&matrix(&a)) == canonical_string(&matrix(&b)));
    }

    #[test]
    fn representation_check_matches_alternation(g in arb_graph(5), letters in proptest::collection::vec(0u32..5, 0..14)) {
        let n = g.n() as u32;
        let mut w: Vec<u32> = (0..n).collect();
        w.extend(letters.into_iter().filter(|&l| l < n));
        let verdict = represents(&Word(w.clone()), &g).unwrap().represents;
        let oracle = (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.adjacent(u, v) == alternate(&w, u as u32, v as u32)));
        prop_assert_eq!(verdict, oracle);
    }

    #[test]
    fn found_uniform_words_represent(g in arb_graph(5), k in 1usize..=2) {
        if let Some(w) = find_uniform_word(&g, k).unwrap() {
            prop_assert!(represents(&w, &g).unwrap().represents);
            prop_assert_eq!(w.len(), k * g.n());
        }
    }

    #[test]
    fn three_colourings_give_semi_transitive_orientations(g in arb_graph(8)) {
        if let Some(c) = k_colorable(&g, 3).unwrap() {
            let d = orient_by_coloring(&g, &c).unwrap();
            let arc: Matrix = (0..g.n()).map(|u| (0..g.n()).map(|v| d.has_arc(u, v)).collect()).collect();
            prop_assert!(semi_transitive(&arc));
        }
    }

    #[test]
    fn gccg_structural_counts(m in 3usize..=6, n in 1usize..=3, seed in any::<u64>()) {
        let spec = GccSpec::new(m, n).unwrap();
        let gcc = build_gccg(spec).unwrap();
        let cells: Vec<CellChoice> = (0..m * n)
            .map(|i| [CellChoice::Main, CellChoice::Anti, CellChoice::None][(seed >> (2 * (i % 32))) as usize % 3])
            .collect();
        let filled = cells.iter().filter(|c| **c != CellChoice::None).count();
        let t = TriangulationSpec { cells };
        let g = gcc.apply_triangulation(&t).unwrap();
        prop_assert_eq!(g.n(), m * (n + 1));
        prop_assert_eq!(g.edge_count(), m * (2 * n + 1) + filled);
        prop_assert_eq!(spec.cell_count(), m * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Propagation never discards a semi-transitive completion, and only
    /// reports a contradiction when none exists.
    #[test]
    fn propagation_is_sound(g in arb_sparse_graph(8, 12), picks in proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..3)) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let mut p = PartialOrientation::new(g.clone());
        for (idx, fw) in picks {
            let (u, v) = *idx.get(&edges);
            let _ = if fw { p.orient(u, v) } else { p.orient(v, u) };
        }
        let completions: Vec<Matrix> = (0..1u64 << edges.len())
            .map(|b| orientation(g.n(), &edges, b))
            .filter(|arc| (0..g.n()).all(|u| (0..g.n()).all(|v| !p.has_arc(u, v) || arc[u][v])))
            .filter(semi_transitive)
            .collect();
        match propagate(&p) {
            Err(_) => prop_assert!(completions.is_empty()),
            Ok(q) => {
                for arc in &completions {
                    prop_assert!((0..g.n()).all(|u| (0..g.n()).all(|v| !q.has_arc(u, v) || arc[u][v])));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn counts_match_brute_force(g in arb_sparse_graph(7, 12)) {
        prop_assert_eq!(count_semi_transitive(&g).unwrap(), count_orientations(&matrix(&g)));
    }

    #[test]
    fn decisions_are_isomorphism_invariant((g, perm) in graph_and_permutation(7)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(semi_transitive_orientation(&g).unwrap().is_some(), semi_transitive_orientation(&h).unwrap().is_some());
        if g.edge_count() <= 14 {
            prop_assert_eq!(count_semi_transitive(&g).unwrap(), count_semi_transitive(&h).unwrap());
        }
    }
}
