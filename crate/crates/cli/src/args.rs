use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "poisson",
    version,
    about = "Exact computations with polynomial Poisson structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Formula,
    Forms,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// Catalog entry; takes precedence over --file.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Path to a JSON bivector.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// Inline JSON bivector.
    #[arg(long, conflicts_with_all = ["catalog", "file"])]
    pub json: Option<String>,
    /// Parameter binding `name=value` for catalog entries, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Size of sized catalog entries (P2, rigid, deformed-mu).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identity by both criteria.
    Verify(Source),
    /// Evaluate the bracket {P, Q}.
    Bracket {
        #[command(flatten)]
        source: Source,
        p: String,
        q: String,
    },
    /// Apply the coboundary to a cochain.
    Delta {
        #[command(flatten)]
        source: Source,
        /// Cochain as inline JSON.
        #[arg(long)]
        cochain: Option<String>,
        /// Cochain JSON file.
        #[arg(long, conflicts_with = "cochain")]
        cochain_file: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Via::Formula)]
        via: Via,
    },
    /// Dimensions of cochains, cocycles, coboundaries and cohomology.
    Cohomology {
        #[command(flatten)]
        source: Source,
        /// A single arity.
        #[arg(long, conflicts_with = "kmax")]
        k: Option<usize>,
        /// All arities 0..=KMAX (default: the number of variables).
        #[arg(long)]
        kmax: Option<usize>,
        /// A single value degree.
        #[arg(long, conflicts_with = "cutoff")]
        degree: Option<u32>,
        /// Value degrees 0..=CUTOFF.
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        /// Torus-invariant complex relative to X0: weight of Xi is i, X0
        /// never appears in arguments or values.
        #[arg(long)]
        invariant: bool,
        /// Drop X0 from arguments and values without the weight condition.
        #[arg(long)]
        exclude_x0: bool,
        /// Write the coboundary matrix of the single (k, degree) slice as
        /// CSV triplets.
        #[arg(long, requires_all = ["k", "degree"])]
        matrix_csv: Option<std::path::PathBuf>,
    },
    /// List, show or query the built-in structures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Recompute a reference table and compare.
    Reproduce {
        #[arg(value_enum)]
        id: crate::ReproduceId,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// One line per entry.
    List,
    /// The bivector of an entry in JSON form.
    Show {
        name: String,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Recorded expected values.
    Expected { name: String },
}
