use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qproj", version, about = "q-matroids, projectivization matroids and rank-metric code invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized corpus or sample.
    #[arg(long, global = true, default_value_t = qproj_core::corpus::DEFAULT_SEED)]
    pub seed: u64,

    /// Raise every size guard by this many powers of two.
    #[arg(long = "unsafe-raise-guards", global = true, value_name = "BITS")]
    pub raise_guards: Option<u32>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Definition,
    Flats,
    Recursive,
}

impl From<Method> for qproj_core::CharPolyMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Definition => qproj_core::CharPolyMethod::Definition,
            Method::Flats => qproj_core::CharPolyMethod::Flats,
            Method::Recursive => qproj_core::CharPolyMethod::Recursive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Rank,
    Hamming,
}

impl From<MetricArg> for qproj_core::Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Rank => qproj_core::Metric::Rank,
            MetricArg::Hamming => qproj_core::Metric::Hamming,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Projectivization,
    Maps,
    Charpoly,
    Critical,
    Weights,
}

/// Exactly one q-matroid source.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Code file `{q, m, modulus?, n, k, G}`.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// q-matroid file (uniform, flats or code).
    #[arg(long)]
    pub qmatroid: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic polynomial of a q-matroid.
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Also run the other two methods and report whether all agree.
        #[arg(long)]
        cross_check: bool,
    },
    /// The projectivization matroid, written by its flats.
    Projectivize {
        #[command(flatten)]
        input: Input,
    },
    /// Weight distribution of a code.
    Weights {
        #[arg(long)]
        code: PathBuf,
        /// Defaults to hamming with --hamming-code and rank otherwise.
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
        /// Use the associated Hamming-metric code G H.
        #[arg(long)]
        hamming_code: bool,
    },
    /// Run a verification suite. Without inputs the seeded standard corpus
    /// is used and instances beyond the size guards are skipped.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        code: Vec<PathBuf>,
        #[arg(long)]
        qmatroid: Vec<PathBuf>,
        /// Map corpus: one entry or a list of `{name?, domain, codomain, matrix}`.
        #[arg(long)]
        maps: Vec<PathBuf>,
        /// Tuple length for the critical suite.
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Also check the join/atom description of q-strong maps.
        #[arg(long)]
        strong_characterization: bool,
    },
    /// Classify the maps in a map corpus.
    Maps {
        #[arg(long)]
        maps: PathBuf,
    },
    /// Summary of a code or q-matroid; the size guards without input.
    Info {
        #[arg(long, conflicts_with = "qmatroid")]
        code: Option<PathBuf>,
        #[arg(long)]
        qmatroid: Option<PathBuf>,
    },
}
