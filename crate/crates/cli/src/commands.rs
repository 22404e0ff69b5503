use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;
use wordrep_core::catalog;
use wordrep_core::gccg::{build_gccg, orientation_o, GccSpec, TriangulationSpec};
use wordrep_core::graph::io::{digraph_to_dot, graph_to_dot, parse_document, GraphDocument};
use wordrep_core::graph::Graph;
use wordrep_core::semitrans::{
    count_semi_transitive, derive_script, infer_labeling, parse_script, replay_script, semi_transitive_orientation,
    Labeling, Verdict,
};
use wordrep_core::verify::{
    census_with_memo, cross_validate_small_graphs, verify_characterization, verify_inductive_step,
    verify_layer_lemmas, CellMode, CensusReport, VerdictMemo, VerificationReport, VerifyOptions,
};
use wordrep_core::words::{represents, Word};
use wordrep_core::{Error, Result};

use crate::{CatalogAction, Cli, Command, Format, GccgAction, VerifyArgs, VerifyTarget, WitnessFormat};

/// What a command prints, and how it exits.
struct Outcome {
    text: String,
    json: serde_json::Value,
    /// Set when a verification found a counterexample or a proof failed.
    failed: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, failed: false }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let out = dispatch(&cli.command)?;
    let body = match cli.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    Ok(if out.failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CheckWord { word, graph } => check_word(word, &load_graph(&graph.graph)?),
        Command::Semitrans { graph, count, witness } => semitrans(&load_graph(&graph.graph)?, *count, *witness),
        Command::Gccg { action } => gccg(action),
        Command::Verify { target } => verify(target),
        Command::Census { m, n, max_vertices, partial, jobs } => census(*m, *n, *max_vertices, *partial, *jobs),
        Command::Replay { graph, script, infer_labeling, labels } => {
            replay(&load_graph(&graph.graph)?, script, *infer_labeling, labels.as_deref())
        }
        Command::Prove { graph } => prove(&load_graph(&graph.graph)?),
        Command::Catalog { action } => catalog_cmd(action),
    }
}

/// A JSON file on disk, else a catalog fixture (case-insensitive, `.json` optional).
fn load_document(arg: &str) -> Result<GraphDocument> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return parse_document(&text);
    }
    let stem = arg.strip_suffix(".json").unwrap_or(arg);
    let name = catalog::names().into_iter().find(|n| n.eq_ignore_ascii_case(stem));
    match name {
        Some(n) => catalog::fixture(&n),
        None => Err(Error::UnknownFixture(arg.to_string())),
    }
}

fn load_graph(arg: &str) -> Result<Graph> {
    Ok(load_document(arg)?.underlying().clone())
}

fn check_word(word: &str, g: &Graph) -> Result<Outcome> {
    let single_digit = g.ids().iter().all(|&id| id < 10);
    let w = Word::parse_inline(word, single_digit)?;
    let check = represents(&w, g)?;
    let mut text = format!("represents: {}\n", check.represents);
    if let Some(d) = &check.discrepancy {
        let _ = writeln!(text, "pair {} {}: adjacent {}, alternate {}", d.x, d.y, d.adjacent, d.alternate);
    }
    let json = json!({ "word": w.letters(), "represents": check.represents, "discrepancy": check.discrepancy });
    Ok(Outcome::ok(text, json))
}

fn semitrans(g: &Graph, count: bool, witness: Option<WitnessFormat>) -> Result<Outcome> {
    let orientation = semi_transitive_orientation(g)?;
    let total = if count { Some(count_semi_transitive(g)?) } else { None };
    let mut text = String::new();
    match (&orientation, witness) {
        (None, _) => text.push_str("none\n"),
        (Some(d), Some(WitnessFormat::Dot)) => text.push_str(&digraph_to_dot(d)),
        (Some(d), Some(WitnessFormat::Json)) => {
            text.push_str(&serde_json::to_string(d).expect("json"));
            text.push('\n');
        }
        (Some(d), None) => {
            let arcs: Vec<String> = d.id_arcs().iter().map(|(a, b)| format!("{a}->{b}")).collect();
            let _ = writeln!(text, "semi-transitive: {}", arcs.join(" "));
        }
    }
    if let Some(c) = total {
        let _ = writeln!(text, "count: {c}");
    }
    let json = json!({
        "semi_transitive": orientation.is_some(),
        "orientation": orientation,
        "count": total.map(|c| c.to_string()),
    });
    Ok(Outcome::ok(text, json))
}

fn render_graph(text: &mut String, g: &Graph) {
    let _ = writeln!(text, "vertices: {}", g.n());
    let _ = writeln!(text, "edges: {}", g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(text, "  {} {}", g.label(u), g.label(v));
    }
}

fn gccg(action: &GccgAction) -> Result<Outcome> {
    match action {
        GccgAction::Build { m, n, tri, dot } => {
            let spec = GccSpec::new(*m, *n)?;
            let grid = build_gccg(spec)?;
            let t = tri.as_deref().map(|s| TriangulationSpec::parse_for(spec, s)).transpose()?;
            let g = match &t {
                Some(t) => grid.apply_triangulation(t)?,
                None => grid.graph().clone(),
            };
            let mut text = String::new();
            if *dot {
                text.push_str(&graph_to_dot(&g));
            } else {
                render_graph(&mut text, &g);
            }
            let json = json!({ "m": m, "n": n, "tri": t.map(|t| t.to_string()), "graph": g });
            Ok(Outcome::ok(text, json))
        }
        GccgAction::OrientO { m, n, tri, dot } => {
            let spec = GccSpec::new(*m, *n)?;
            let grid = build_gccg(spec)?;
            let t = TriangulationSpec::parse_for(spec, tri)?;
            let d = orientation_o(&grid, &t)?;
            let semi = wordrep_core::graph::is_semi_transitive(&d).holds();
            let mut text = String::new();
            if *dot {
                text.push_str(&digraph_to_dot(&d));
            } else {
                let g = d.underlying();
                let _ = writeln!(text, "arcs: {}", d.arc_count());
                for (a, b) in d.arcs() {
                    let _ = writeln!(text, "  {} -> {}", g.label(a), g.label(b));
                }
                let _ = writeln!(text, "semi-transitive: {semi}");
            }
            let json = json!({ "m": m, "n": n, "tri": t.to_string(), "digraph": d, "semi_transitive": semi });
            Ok(Outcome::ok(text, json))
        }
    }
}

fn parse_range(s: &str) -> Result<std::ops::Range<u64>> {
    let bad = || Error::Parse(format!("index range must look like A..B, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..b)
}

fn options(args: &VerifyArgs, experimental: bool) -> Result<VerifyOptions> {
    Ok(VerifyOptions {
        index_range: args.index_range.as_deref().map(parse_range).transpose()?,
        jobs: args.jobs,
        experimental,
    })
}

fn report_text(r: &VerificationReport) -> String {
    let mut text = String::new();
    let _ = write!(text, "{}", r.kind);
    if let (Some(m), Some(n)) = (r.m, r.n) {
        let _ = write!(text, " m={m} n={n}");
    }
    if let Some(mode) = r.mode {
        let _ = write!(text, " {mode:?}");
    }
    if let Some((a, b)) = r.index_range {
        let _ = write!(text, " indices {a}..{b}");
    }
    text.push('\n');
    if r.kind == "characterization" && r.predicate_sets.is_none() {
        let agree = r.totals.enumerated - r.counterexamples.len() as u64;
        let _ = writeln!(text, "agreement on {agree}/{}", r.totals.enumerated);
        let _ = writeln!(text, "representable: {}, forbidden-free: {}", r.totals.representable, r.totals.forbidden_free);
    }
    if let Some(c) = r.forbidden_free_classes {
        let _ = writeln!(text, "forbidden-free isomorphism classes: {c}");
    }
    if let Some(p) = &r.predicate_sets {
        let _ = writeln!(
            text,
            "enumerated {}: representable {}, forbidden-free {} (equality not asserted)",
            r.totals.enumerated,
            p.representable.len(),
            p.forbidden_free.len()
        );
    }
    for c in &r.checks {
        let _ = writeln!(text, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    const SHOWN: usize = 20;
    for c in r.counterexamples.iter().take(SHOWN) {
        let _ = writeln!(
            text,
            "counterexample #{} {}: representable {}, forbidden-free {}{}",
            c.index,
            c.spec,
            c.representable,
            c.forbidden_free,
            c.obstruction.as_deref().map(|o| format!(" ({o})")).unwrap_or_default()
        );
    }
    if r.counterexamples.len() > SHOWN {
        let _ = writeln!(text, "... {} more counterexamples", r.counterexamples.len() - SHOWN);
    }
    text
}

fn report_outcome(r: VerificationReport) -> Outcome {
    Outcome { text: report_text(&r), json: to_value(&r), failed: !r.passed() }
}

fn verify(target: &VerifyTarget) -> Result<Outcome> {
    let r = match target {
        VerifyTarget::Theorem3(a) => {
            if a.m < 4 {
                return Err(Error::UnsupportedCombination("theorem3 covers m >= 4; use theorem4 for m = 3".into()));
            }
            verify_characterization(a.m, a.n, CellMode::Full, &options(a, false)?)?
        }
        VerifyTarget::Theorem4(a) => {
            if a.m != 3 {
                return Err(Error::UnsupportedCombination("theorem4 covers m = 3; use theorem3 for m >= 4".into()));
            }
            verify_characterization(a.m, a.n, CellMode::Full, &options(a, false)?)?
        }
        VerifyTarget::Theorem5 { args, experimental } => {
            verify_characterization(args.m, args.n, CellMode::Partial, &options(args, *experimental)?)?
        }
        VerifyTarget::Lemmas(a) => verify_layer_lemmas(a.m, a.n, &options(a, false)?)?,
        VerifyTarget::Induction => verify_inductive_step(&catalog::InductionCatalog::shipped()),
        VerifyTarget::Small { max_vertices, allow_larger } => cross_validate_small_graphs(*max_vertices, *allow_larger)?,
    };
    Ok(report_outcome(r))
}

fn census_text(r: &CensusReport) -> String {
    let mut text = format!(
        "census m={} n={} {:?} up to {} vertices: {} minimal classes\n",
        r.m,
        r.n,
        r.mode,
        r.max_vertices,
        r.classes.len()
    );
    let _ = writeln!(
        text,
        "triangulations {} ({} classes), subgraphs examined {} ({} classes)",
        r.stats.triangulations,
        r.stats.triangulation_classes,
        r.stats.subgraphs_examined,
        r.stats.distinct_subgraph_classes
    );
    for e in &r.classes {
        let _ = writeln!(
            text,
            "  {} vertices, {} edges, from {} [{}]{}",
            e.vertices,
            e.edges,
            e.spec,
            e.certificate,
            e.matches.as_deref().map(|m| format!(" = {m}")).unwrap_or_default()
        );
    }
    text
}

fn census(m: usize, n: usize, max_vertices: usize, partial: bool, jobs: Option<usize>) -> Result<Outcome> {
    let mode = if partial { CellMode::Partial } else { CellMode::Full };
    let opts = VerifyOptions { jobs, ..VerifyOptions::default() };
    let r = census_with_memo(m, n, max_vertices, mode, &opts, &VerdictMemo::new())?;
    Ok(Outcome::ok(census_text(&r), to_value(&r)))
}

/// `id=label,...` pairs; unlisted vertices keep their id as label.
fn parse_labels(g: &Graph, s: &str) -> Result<Labeling> {
    let mut l = Labeling::from_ids(g);
    for pair in s.split(',').filter(|p| !p.trim().is_empty()) {
        let bad = || Error::Parse(format!("label assignment must look like id=label, got `{pair}`"));
        let (id, label) = pair.split_once('=').ok_or_else(bad)?;
        let id = id.trim().parse().map_err(|_| bad())?;
        let label = label.trim().parse().map_err(|_| bad())?;
        let u = g.index_of(id).ok_or(Error::UnknownVertex(id))?;
        l.labels[u] = label;
    }
    Ok(l)
}

fn replay(g: &Graph, script_path: &str, infer: bool, labels: Option<&str>) -> Result<Outcome> {
    let text = std::fs::read_to_string(script_path).map_err(|e| Error::Parse(format!("{script_path}: {e}")))?;
    let script = parse_script(&text)?;
    let labeling = if infer {
        match infer_labeling(g, &script)? {
            Some(l) => l,
            None => {
                let json = json!({ "labeling": null, "proven": false, "error": "no labeling replays the script" });
                return Ok(Outcome { text: "no labeling replays the script\n".into(), json, failed: true });
            }
        }
    } else {
        match labels {
            Some(s) => parse_labels(g, s)?,
            None => Labeling::from_ids(g),
        }
    };
    let by_id = labeling.by_id(g);
    match replay_script(g, &labeling, &script) {
        Ok(report) => {
            let mut out = format!("steps replayed: {}\n", report.steps.len());
            match &report.verdict {
                Verdict::Proven => out.push_str("proven: every copy is contradictory\n"),
                Verdict::NotExhaustive { open } => {
                    let _ = writeln!(out, "not exhaustive: open copies {}", open.join(", "));
                }
            }
            let failed = !report.proven();
            let json = json!({ "labeling": by_id, "proven": report.proven(), "report": report });
            Ok(Outcome { text: out, json, failed })
        }
        Err(Error::InvalidStep { index, reason }) => {
            let msg = format!("step {index} fails: {reason}");
            let json = json!({ "labeling": by_id, "proven": false, "error": msg });
            Ok(Outcome { text: msg + "\n", json, failed: true })
        }
        Err(e) => Err(e),
    }
}

fn prove(g: &Graph) -> Result<Outcome> {
    let labeling = Labeling::from_ids(g);
    match derive_script(g, &labeling) {
        Some(s) => {
            let text = s.to_string();
            let json = json!({ "proof": text, "steps": s.ops.len() });
            Ok(Outcome::ok(text, json))
        }
        None => {
            let json = json!({ "proof": null, "steps": 0 });
            Ok(Outcome::ok("none: the graph has a semi-transitive orientation\n".into(), json))
        }
    }
}

fn catalog_cmd(action: &CatalogAction) -> Result<Outcome> {
    match action {
        CatalogAction::List => {
            let names = catalog::names();
            Ok(Outcome::ok(names.join("\n") + "\n", json!(names)))
        }
        CatalogAction::Dump { name } => {
            let text = catalog::fixture_json(name)?;
            let json: serde_json::Value = serde_json::from_str(&text).expect("fixture is valid json");
            Ok(Outcome::ok(text, json))
        }
    }
}
