//! Acceptance suite: one line per criterion, then a non-zero exit if any
//! criterion is red. Time limits are pinned below.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wordrep_core::catalog::{self, f2_script, forbidden_three_sector, wheel, InductionCatalog};
use wordrep_core::gccg::chromatic_number;
use wordrep_core::graph::{are_isomorphic, is_semi_transitive, Graph};
use wordrep_core::semitrans::{count_semi_transitive, infer_labeling, replay_script, semi_transitive_orientation, Labeling};
use wordrep_core::verify::*;
use wordrep_core::Error;

const WHEELS_LIMIT: Duration = Duration::from_secs(1);
const FORBIDDEN_LIMIT: Duration = Duration::from_secs(10);
const MORE_SECTORS_LIMIT: Duration = Duration::from_secs(5 * 60);
const THREE_SECTORS_LIMIT: Duration = Duration::from_secs(5 * 60);
const PARTIAL_LIMIT: Duration = Duration::from_secs(10 * 60);
const CENSUS_LIMIT: Duration = Duration::from_secs(10 * 60);
const REPLAY_LIMIT: Duration = Duration::from_secs(30);
const INDUCTION_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_LIMIT: Duration = Duration::from_secs(5 * 60);
const CHROMATIC_LIMIT: Duration = Duration::from_secs(5);

const RANDOM_GRAPHS: usize = 200;
const RANDOM_MAX_EDGES: usize = 14;
const RANDOM_SEED: u64 = 0x005e_ed0f_0a11;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    let ok = out.ok && in_time;
    let budget = match limit {
        Some(l) => format!("{:.2}s of {}s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", took.as_secs_f64()),
    };
    let late = if in_time { String::new() } else { " [over time limit]".into() };
    println!("[{}] {id:>2} {title}: {} ({budget}){late}", if ok { "PASS" } else { "FAIL" }, out.detail);
    ok
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn wheels() -> Outcome {
    let present = |k| semi_transitive_orientation(&wheel(k).unwrap()).unwrap().is_some();
    let got = [(4, present(4)), (5, present(5)), (6, present(6)), (7, present(7))];
    let ok = got == [(4, true), (5, false), (6, true), (7, false)];
    outcome(ok, format!("orientation present for {:?}", got.iter().filter(|g| g.1).map(|g| g.0).collect::<Vec<_>>()))
}

fn forbidden() -> Outcome {
    let mut problems = Vec::new();
    let mut deletions = 0;
    for f in forbidden_three_sector() {
        if semi_transitive_orientation(&f.graph).unwrap().is_some() {
            problems.push(format!("{} has an orientation", f.name));
        }
        for v in 0..f.graph.n() {
            deletions += 1;
            if semi_transitive_orientation(&f.graph.without_vertex(v)).unwrap().is_none() {
                problems.push(format!("{} minus {} has none", f.name, f.graph.label(v)));
            }
        }
    }
    if problems.is_empty() {
        outcome(true, format!("F1..F6 absent, all {deletions} one-vertex deletions present"))
    } else {
        outcome(false, problems.join("; "))
    }
}

fn characterization(families: &[(usize, usize, u64)], mode: CellMode, classes_32: bool) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for &(m, n, expected) in families {
        match verify_characterization(m, n, mode, &opts()) {
            Ok(r) => {
                let agree = r.totals.enumerated - r.counterexamples.len() as u64;
                let mut line = format!("({m},{n}) {agree}/{} agree", r.totals.enumerated);
                ok &= r.totals.enumerated == expected && r.counterexamples.is_empty();
                if let Some(c) = r.counterexamples.first() {
                    line += &format!(
                        ", {} counterexamples, first {} (representable {}, forbidden-free {})",
                        r.counterexamples.len(),
                        c.spec,
                        c.representable,
                        c.forbidden_free
                    );
                }
                if classes_32 && (m, n) == (3, 2) {
                    let classes = r.forbidden_free_classes.unwrap_or(0);
                    ok &= classes == 3;
                    line += &format!(", {classes} forbidden-free classes");
                }
                parts.push(line);
            }
            Err(e) => {
                ok = false;
                parts.push(format!("({m},{n}) error: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn lemmas() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n) in [(4, 2), (4, 3), (5, 2)] {
        let r = verify_layer_lemmas(m, n, &opts()).unwrap();
        ok &= r.passed();
        let failed: Vec<&str> = r.failed_checks().map(|c| c.detail.as_str()).collect();
        parts.push(if failed.is_empty() {
            format!("({m},{n}) {} ok", r.totals.enumerated)
        } else {
            format!("({m},{n}) {}", failed.join(", "))
        });
    }
    outcome(ok, parts.join("; "))
}

fn census() -> Outcome {
    let big = census_minimal(3, 3, 8, &opts()).unwrap();
    let small = census_minimal(3, 3, 5, &opts()).unwrap();
    let fs = forbidden_three_sector();
    let mut matched = BTreeSet::new();
    for c in &big.classes {
        for f in &fs {
            if are_isomorphic(&c.graph, &f.graph).unwrap() {
                matched.insert(f.name.clone());
            }
        }
    }
    let ok = big.classes.len() == 6 && matched.len() == 6 && small.classes.is_empty();
    outcome(
        ok,
        format!(
            "(3,3,8) {} classes matching {:?}; (3,3,5) {} classes",
            big.classes.len(),
            matched,
            small.classes.len()
        ),
    )
}

fn branching_proof() -> Outcome {
    let f2 = &forbidden_three_sector()[1].graph;
    let script = f2_script();
    let labeling = match infer_labeling(f2, &script) {
        Ok(Some(l)) => l,
        Ok(None) => {
            // Report where the one edge-consistent labeling class breaks.
            let probe = Labeling { labels: vec![4, 5, 6, 7, 1, 2, 3] };
            let why = match replay_script(f2, &probe, &script) {
                Err(Error::InvalidStep { index, reason }) => {
                    format!("; labeling a..g=4567123 stops at step {index} {reason}")
                }
                Err(e) => format!("; {e}"),
                Ok(r) => format!("; labeling a..g=4567123 ends {:?}", r.verdict),
            };
            return outcome(false, format!("no labeling of F2 replays all {} steps{why}", script.ops.len()));
        }
        Err(e) => return outcome(false, e.to_string()),
    };
    let report = replay_script(f2, &labeling, &script).unwrap();
    let mutations = script_mutations(&script);
    let accepted: Vec<String> = mutations
        .iter()
        .filter(|(_, _, m)| matches!(replay_script(f2, &labeling, m), Ok(r) if r.proven()))
        .map(|(_, what, _)| what.clone())
        .collect();
    outcome(
        report.proven() && accepted.is_empty(),
        format!("{} steps proven, {}/{} mutations rejected", script.ops.len(), mutations.len() - accepted.len(), mutations.len()),
    )
}

fn induction() -> Outcome {
    let r = verify_inductive_step(&InductionCatalog::shipped());
    let details: Vec<String> = r.checks.iter().map(|c| format!("{} {}", c.name, if c.passed { "ok" } else { &c.detail })).collect();
    outcome(r.passed(), details.join("; "))
}

fn random_graph(rng: &mut StdRng) -> Graph {
    let n = rng.gen_range(2..=8);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut edges = Vec::new();
    while !pairs.is_empty() && edges.len() < RANDOM_MAX_EDGES {
        let e = pairs.swap_remove(rng.gen_range(0..pairs.len()));
        if rng.gen_bool(0.6) {
            edges.push(e);
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let r = cross_validate_small_graphs(5, false).unwrap();
    let everyone_present = r.totals.representable == r.totals.enumerated && r.totals.forbidden_free == r.totals.enumerated;
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    let mut mismatches = 0;
    for _ in 0..RANDOM_GRAPHS {
        let g = random_graph(&mut rng);
        if count_semi_transitive(&g).unwrap() != count_orientations(&matrix(&g)) {
            mismatches += 1;
        }
    }
    outcome(
        r.passed() && everyone_present && mismatches == 0,
        format!(
            "{} classes on <=5 vertices all orientation- and word-present ({}); {}/{RANDOM_GRAPHS} random counts match",
            r.totals.enumerated,
            r.checks[0].detail,
            RANDOM_GRAPHS - mismatches
        ),
    )
}

fn chromatic() -> Outcome {
    let fig = catalog::orientation_o_figure().digraph;
    let g = fig.underlying();
    let chi = chromatic_number(g).unwrap();
    let present = semi_transitive_orientation(g).unwrap().is_some();
    let drawn = is_semi_transitive(&fig).holds();
    outcome(
        chi == 4 && present,
        format!("{} vertices, chromatic number {chi}, orientation present {present}, drawn orientation semi-transitive {drawn}", g.n()),
    )
}

fn main() {
    let results = [
        run(1, "wheels", Some(WHEELS_LIMIT), wheels),
        run(2, "forbidden catalog", Some(FORBIDDEN_LIMIT), forbidden),
        run(3, "more than three sectors", Some(MORE_SECTORS_LIMIT), || {
            characterization(&[(4, 2, 256), (4, 3, 4096), (5, 2, 1024)], CellMode::Full, false)
        }),
        run(4, "three sectors", Some(THREE_SECTORS_LIMIT), || {
            characterization(&[(3, 2, 64), (3, 3, 512), (3, 4, 4096)], CellMode::Full, true)
        }),
        run(5, "partial triangulations", Some(PARTIAL_LIMIT), || characterization(&[(4, 2, 6561)], CellMode::Partial, false)),
        run(6, "layer lemmas", None, lemmas),
        run(7, "census", Some(CENSUS_LIMIT), census),
        run(8, "branching proof", Some(REPLAY_LIMIT), branching_proof),
        run(9, "induction step", Some(INDUCTION_LIMIT), induction),
        run(10, "oracle equivalence", Some(ORACLE_LIMIT), oracle_equivalence),
        run(11, "chromatic witness", Some(CHROMATIC_LIMIT), chromatic),
    ];
    let red = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {red} failed", results.len() - red);
    if red > 0 {
        std::process::exit(1);
    }
}
