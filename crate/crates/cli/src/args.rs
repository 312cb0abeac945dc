use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "koszul-lab", version, about = "Koszul homology, integral closure and resolution checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: q or fp:<p>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Monomial order.
    #[arg(long, global = true, value_parser = ["grevlex", "lex", "glex"])]
    pub order: Option<String>,
    /// Comma-separated variables; inferred from the ideal in order of appearance when omitted.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Comma-separated relations of a quotient ring.
    #[arg(long, global = true)]
    pub relations: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for suites; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Wall-clock budget in seconds, per check for suites.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// The ring itself.
    Ring,
    /// The injective hull of the residue field of an Artinian ring.
    InjectiveHull,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// Generators separated by commas, or `examples/<name>` for a registry example.
    #[arg(long)]
    pub ideal: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(IdealArg),
    /// Normal form of a polynomial modulo the ideal.
    Nf {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
    },
    /// Koszul homology annihilators.
    Koszul {
        #[command(flatten)]
        ideal: IdealArg,
        /// Homological index; all indices when omitted.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum, default_value_t = Coefficients::Ring)]
        coefficients: Coefficients,
    },
    /// Minimal presentation matrix and the ideal of its entries.
    Syz(IdealArg),
    /// Integral closure: monomial closure, membership or fractional membership.
    Closure {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, conflicts_with = "member")]
        monomial: bool,
        /// Element to test for membership in the closure.
        #[arg(long)]
        member: Option<String>,
        /// Largest witness degree tried.
        #[arg(long, default_value_t = 10)]
        mmax: u32,
        /// Test membership in the closure of I^(a/b).
        #[arg(long, requires = "member")]
        fractional: Option<String>,
    },
    /// Colon ideal I : J.
    Colon {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        by: String,
    },
    /// Tor_t(R/I, M); M is the residue field unless columns are given.
    Tor {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        t: usize,
        /// Degrees of the free module presenting M.
        #[arg(long)]
        twists: Option<String>,
        /// Relation columns of M separated by ';', entries by ','.
        #[arg(long)]
        columns: Option<String>,
    },
    /// Minimal graded free resolution of R/I.
    Resolve {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// List the worked examples, or evaluate the facts of one or all of them.
    Examples {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Run a scenario file, or the default suite when no file is given.
    Check {
        file: Option<PathBuf>,
        /// Record elapsed milliseconds per outcome.
        #[arg(long)]
        timings: bool,
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one of the open-question probes over a range of seeds.
    Probe {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        question: u8,
        /// First seed; defaults to --seed.
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}
