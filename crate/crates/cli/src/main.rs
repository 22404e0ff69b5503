//! `wordrep`: command-line front end for word-representability checks,
//! semi-transitive orientations and the grid-cylinder verifiers.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wordrep", version, about = "Word-representability and semi-transitive orientations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether a word represents a graph.
    CheckWord {
        /// The word: whitespace- or comma-separated letters, or a run of
        /// single digits when every vertex id is below 10.
        #[arg(short, long)]
        word: String,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Decide whether a graph has a semi-transitive orientation.
    Semitrans {
        #[command(flatten)]
        graph: GraphArg,
        /// Count all semi-transitive orientations.
        #[arg(long)]
        count: bool,
        /// Print the witness orientation in this format.
        #[arg(long, value_enum)]
        witness: Option<WitnessFormat>,
    },
    /// Grid-covered cylinder graphs.
    Gccg {
        #[command(subcommand)]
        action: GccgAction,
    },
    /// Exhaustive verifiers.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Minimal non-representable induced subgraphs over all triangulations.
    Census {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        max_vertices: usize,
        /// Include partially triangulated grids.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Replay a branching proof script against a graph.
    Replay {
        #[command(flatten)]
        graph: GraphArg,
        /// Script file.
        #[arg(long)]
        script: String,
        /// Search for a labeling of the vertices by script labels.
        #[arg(long)]
        infer_labeling: bool,
        /// Script label of each vertex id, as `id=label,...`; defaults to the ids.
        #[arg(long, conflicts_with = "infer_labeling")]
        labels: Option<String>,
    },
    /// Derive a branching proof script showing a graph has no semi-transitive orientation.
    Prove {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Named fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Graph JSON file, or the name of a catalog fixture.
    #[arg(short, long)]
    pub graph: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum GccgAction {
    /// Build G_{m,n}, optionally triangulated.
    Build {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        /// Triangulation as a row-major string over M, A, N.
        #[arg(long)]
        tri: Option<String>,
        /// Print DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Orientation O of a triangulation whose layers have uniform type.
    OrientO {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        tri: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyTarget {
    /// More than three sectors, full triangulations: W5/W7-freeness.
    Theorem3(VerifyArgs),
    /// Three sectors, full triangulations: freeness of F1..F6.
    Theorem4(VerifyArgs),
    /// Partial triangulations: W5/W7-freeness.
    Theorem5 {
        #[command(flatten)]
        args: VerifyArgs,
        /// Allow three sectors; both predicate sets are reported, equality is not asserted.
        #[arg(long)]
        experimental: bool,
    },
    /// Mixed layers contain a wheel; orientation O of uniform layers is semi-transitive.
    Lemmas(VerifyArgs),
    /// The one-layer induction step over the catalog bases.
    Induction,
    /// Orientation search against uniform-word search on all small graphs.
    Small {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        /// Allow more than five vertices.
        #[arg(long)]
        allow_larger: bool,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    /// Enumeration indices `A..B`.
    #[arg(long)]
    pub index_range: Option<String>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Print a fixture as JSON.
    Dump { name: String },
    /// List fixture names.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
