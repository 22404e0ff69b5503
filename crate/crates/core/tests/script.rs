mod common;

use common::*;
use proptest::prelude::*;
use wordrep_core::catalog::{f2_script, forbidden_three_sector, forbidden_wheels};
use wordrep_core::semitrans::{derive_script, infer_labeling, replay_script, semi_transitive_orientation, Labeling};
use wordrep_core::Error;

#[test]
fn derived_proofs_replay_for_every_obstruction() {
    let mut gs = forbidden_three_sector();
    gs.extend(forbidden_wheels());
    for f in gs {
        let lab = Labeling::from_ids(&f.graph);
        let s = derive_script(&f.graph, &lab).unwrap_or_else(|| panic!("no proof for {}", f.name));
        let r = replay_script(&f.graph, &lab, &s).unwrap();
        assert!(r.proven(), "{}", f.name);
        assert!(r.copies.iter().all(|c| c.closed_at.is_some()));
        assert!(semi_transitive_orientation(&f.graph).unwrap().is_none());
    }
}

#[test]
fn derived_f2_proof_rejects_deletions_and_reversals() {
    let f2 = &forbidden_three_sector()[1].graph;
    let lab = Labeling::from_ids(f2);
    let s = derive_script(f2, &lab).unwrap();
    // A substituted cycle can happen to be forced as well, so only
    // deletions and reversals are required to fail.
    for (kind, what, m) in script_mutations(&s) {
        if kind != Mutation::Substitute {
            assert!(!matches!(replay_script(f2, &lab, &m), Ok(r) if r.proven()), "{what}");
        }
    }
}

#[test]
fn derived_proofs_round_trip_through_text() {
    let f1 = &forbidden_three_sector()[0].graph;
    let lab = Labeling::from_ids(f1);
    let s = derive_script(f1, &lab).unwrap();
    let again: wordrep_core::semitrans::BranchScript = s.to_string().parse().unwrap();
    assert_eq!(again, s);
}

#[test]
fn shipped_f2_listing_does_not_replay() {
    let f2 = &forbidden_three_sector()[1].graph;
    let script = f2_script();
    assert_eq!(script.ops.len(), 113);
    assert_eq!(infer_labeling(f2, &script).unwrap(), None);
    // The one labeling class consistent with the listing's edges.
    let lab = Labeling { labels: vec![4, 5, 6, 7, 1, 2, 3] };
    match replay_script(f2, &lab, &script) {
        Err(Error::InvalidStep { index, reason }) => {
            assert_eq!(index, 59, "{reason}");
            assert_eq!(script.ops[59].to_string(), "S 4271");
        }
        other => panic!("unexpected {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn a_replayed_proof_means_no_orientation(g in arb_graph(7)) {
        let lab = Labeling::from_ids(&g);
        if let Some(s) = derive_script(&g, &lab) {
            prop_assert!(replay_script(&g, &lab, &s).unwrap().proven());
            prop_assert_eq!(count_orientations(&matrix(&g)), 0);
        }
    }
}
