use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sqgraph",
    version,
    about = "Squares of graph adjacency matrices: two-walk counts, necessary conditions, realization search and duplication families",
    after_help = "Exit codes: 0 success/affirmative, 1 proven negative, 2 input error, 3 budget exhausted."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Input format. `auto` picks graph6 or edge list for graphs, and JSON
    /// (for `.json` files or input starting with `[`) or text for matrices.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto, global = true)]
    pub format: InputFormat,

    /// Write the result to this path instead of stdout. For `family`, a
    /// path not ending in `.json` is created as a bundle directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Encoding for graphs in text output.
    #[arg(long, value_enum, default_value_t = GraphOutput::Graph6, global = true)]
    pub emit: GraphOutput,

    /// Search node budget (realization and isomorphism searches).
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,

    /// Wall-clock budget in seconds for the realization search.
    #[arg(long, global = true)]
    pub max_seconds: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    Edgelist,
    MatrixJson,
    MatrixText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphOutput {
    Graph6,
    Edgelist,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print A(G)², the two-walk count matrix of a graph.
    Square { input: String },
    /// Run every necessary condition and structural diagnostic on a matrix.
    Analyze { input: String },
    /// Four-cycle count from a matrix (or from a graph's square with a graph --format).
    CountC4 { input: String },
    /// Search for graphs whose adjacency matrix squares to the input.
    Realize {
        input: String,
        /// Enumerate labeled witnesses instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Maximum number of witnesses with --all.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build k+1 non-isomorphic graphs on 2kn vertices sharing one square.
    Family {
        input: String,
        #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Bipartite double cover (Kronecker cover) of a graph.
    DoubleCover { input: String },
    /// Disjoint union of two graphs; the second is shifted past the first.
    Union { first: String, second: String },
    /// Decide whether two graphs are isomorphic.
    Iso { first: String, second: String },
    /// Decide whether two matrices are permutation-similar (S2 = P⁻¹ S1 P).
    Similar { first: String, second: String },
}
