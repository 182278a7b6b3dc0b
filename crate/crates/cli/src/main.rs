//! `kdom`: command-line front end for distance k-domination.
//!
//! Every command except `construct` writes one JSON document tagged
//! `"schema": "kdom/1"`. Wall-clock measurements live under the `timing`
//! key so the rest of the document can be diffed across runs.
//!
//! Exit status: 0 success, 1 invariant violation, 2 input error, 3 budget
//! exhausted while `--require-exact` was given.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "kdom",
    version,
    about = "Distance k-domination: exact values, bounds and constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact k-domination number with a certificate.
    Gamma {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        solve: Solve,
    },
    /// Distances, eccentricities, diameter, radius and girth.
    Metrics {
        #[command(flatten)]
        io: Io,
    },
    /// Every lower and upper bound, checked against the exact value.
    Bounds {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        solve: Solve,
        /// Skip the exact solve and report bounds only.
        #[arg(long)]
        no_exact: bool,
    },
    /// Check the direct-product bound on two factors (`--in G --in H`).
    Product {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        solve: Solve,
    },
    /// Spanning tree with the same k-domination number.
    SpanningTree {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        solve: Solve,
    },
    /// Cycle-outsider witness pair for a vertex off a shortest cycle.
    Witness {
        #[command(flatten)]
        io: Io,
        /// The outside vertex.
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        /// Cycle as a comma list; defaults to the graph's canonical shortest cycle.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Ask for a pair adjacent on the cycle.
        #[arg(long)]
        adjacent: bool,
    },
    /// Print a generated graph in edge-list format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Clique size for `clique-expanded`.
        #[arg(long, default_value_t = 1)]
        delta: usize,
        /// Factor files for `product`.
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Randomized check of every invariant against exact values.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0.2)]
        p_min: f64,
        #[arg(long, default_value_t = 0.6)]
        p_max: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<usize>,
        /// Largest factor order in the product checks.
        #[arg(long, default_value_t = 5)]
        product_n_max: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget_nodes: u64,
        #[arg(long, default_value_t = 30.0)]
        budget_seconds: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct Io {
    /// Input edge-list file(s); standard input when omitted.
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reject self-loops and repeated edges instead of dropping them.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug, Clone)]
struct Solve {
    #[arg(long, value_delimiter = ',', default_value = "1")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 30.0)]
    budget_seconds: f64,
    /// Exit with status 3 if any exact solve runs out of budget.
    #[arg(long)]
    require_exact: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Path,
    Cycle,
    CliqueExpanded,
    Product,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code.into(),
        Err(err) => {
            eprintln!("kdom: {err}");
            err.exit_code().into()
        }
    }
}
