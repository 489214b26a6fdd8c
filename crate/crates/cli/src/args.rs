use clap::{Parser, Subcommand, ValueEnum};

use polyamory::cluster::DEFAULT_MAX_SEEDS;

/// Cluster algebras, polyamorous specialisations and integral friezes.
///
/// Quivers, specialisations and triangulations are JSON, given as a file
/// path or inline:
///   quiver          {"n": 2, "arrows": [[1, 2, 1]]}
///   specialisation  {"assign": {"2": -1}}
///   triangulation   {"n": 2, "diagonals": [[0, 2], [0, 3]]}
#[derive(Debug, Parser)]
#[command(name = "polyamory", version, verbatim_doc_comment)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate the initial seed along a sequence of vertices.
    Mutate {
        quiver: String,
        /// Vertices (1-indexed), applied left to right.
        vertices: Vec<usize>,
    },
    /// List every cluster variable and cluster reachable by mutation.
    Enumerate {
        quiver: String,
        /// Stop after this many seeds.
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        cap: usize,
    },
    /// Report which vertices are polyamorous under a specialisation.
    Polyamory {
        quiver: String,
        specialisation: String,
    },
    /// List every polyamorous ±1 specialisation.
    EnumeratePolyamorous {
        quiver: String,
        /// Also list labellings that specialise every vertex.
        #[arg(long)]
        include_vacuous: bool,
    },
    /// Build the frieze of a triangulated polygon under a specialisation.
    Frieze {
        /// Number of nontrivial rows; defaults to the triangulation's.
        #[arg(long)]
        n: Option<usize>,
        /// Triangulation; the fan at vertex 0 when omitted.
        #[arg(long)]
        triangulation: Option<String>,
        /// ±1 values for quiver vertices (diagonals in listed order).
        #[arg(long = "spec")]
        specialisation: Option<String>,
        /// Integer values for the remaining vertices.
        #[arg(long)]
        assign: Option<String>,
        /// Keep the remaining variables symbolic instead of assigning them.
        #[arg(long)]
        symbolic: bool,
        /// Append the diamond, tameness and glide checks.
        #[arg(long)]
        verify: bool,
        /// Entries per printed row; twice the period by default.
        #[arg(long)]
        width: Option<usize>,
        /// Mark the entries of one fundamental domain with `*`.
        #[arg(long)]
        mark: bool,
    },
    /// Search all two-row integral friezes with bounded entries.
    ClassifyTwoRow {
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
}
