use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "unicolor", version, about = "Unique colorability of uniform hypergraphs")]
pub struct Cli {
    /// Print JSON instead of text. Reports from `verify` and
    /// `probe-conjecture` are always JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a hypergraph from one of the generator families.
    Construct(ConstructArgs),

    /// Size, isolated vertices, shadow sizes and positive degrees.
    Analyze {
        file: PathBuf,
        /// Degree level; repeat for several, defaults to every `1..r`.
        #[arg(long = "i")]
        levels: Vec<usize>,
    },

    /// Equivalence classes of proper colorings.
    Colorings {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        limit: Option<usize>,
    },

    /// Whether all proper colorings induce the same partition.
    CheckUnique {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },

    /// Exact threshold values.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Degree level, defaults to `r - 1`.
        #[arg(long)]
        i: Option<usize>,
    },

    /// Run a verification harness and print its report.
    Verify {
        #[command(subcommand)]
        harness: Harness,

        /// Write the counterexample here instead of stderr on failure.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },

    /// Codegree ratios of the two-sided construction over a grid of alphas.
    ProbeConjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        /// Comma-separated fractions, e.g. `1/2,1,3/2`.
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<String>,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hkr,
    Sunflower,
    NestedSunflower,
    CompleteKpartite,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Fraction `P/Q` or integer.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Part sizes for `complete-kpartite`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Write the hypergraph here; otherwise it goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Harness {
    /// Codegree of the alpha in {1, 3} construction equals its branch value.
    Construction {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        m: usize,
    },
    /// The binding construction sits exactly at the threshold.
    Boundary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
    /// Above-threshold samples are uniquely colorable.
    Main {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Every bipartite graph instead of samples (k = r = 2 only).
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        exhaustive: bool,
    },
    /// Vertex-degree threshold for 3-partite 3-graphs.
    Phi331 {
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nested quasi-sunflowers cover every pair.
    Sunflower {
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
    },
    /// Positive i-degree of the alpha = 1 construction.
    Corollary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        m: usize,
    },
    /// Shadow inequality on random k-partite instances.
    Ffk {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rerun the experiment recorded in a JSON report.
    Replay { file: PathBuf },
}
