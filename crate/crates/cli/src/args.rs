use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "einstein-sp", version, about = "Invariant Einstein metrics on quaternionic Stiefel manifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Decimal places for approximate values.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=30))]
    pub digits: u32,
    /// Certification tolerance (solve) or interval width (roots).
    #[arg(long, global = true, default_value = "1e-9")]
    pub tol: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Gröbner budget: S-pairs per basis computation.
    #[arg(long, global = true)]
    pub max_pairs: Option<u64>,
    /// Gröbner budget in seconds. EINSTEIN_SP_BUDGET_SECONDS overrides it.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fibration {
    Wallach,
    Flag,
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub fibration: Fibration,
    /// Wallach parameters k1,k2,k3.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    /// Flag parameter n.
    #[arg(long)]
    pub n: Option<u32>,
    /// Flag parameter p.
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchChoice {
    Both,
    Generic,
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Modular,
    FractionFree,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified positive Einstein metrics.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "both")]
        branch: BranchChoice,
    },
    /// The polynomial Einstein system (flag without --n/--p is symbolic).
    System {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact Ricci components at a metric.
    Ricci {
        #[command(flatten)]
        spec: SpecArgs,
        /// Metric parameters in label order, rationals allowed.
        #[arg(long, value_delimiter = ',', required = true)]
        metric: Vec<String>,
    },
    /// Reduced Gröbner basis of a JSON ideal description.
    Groebner {
        /// JSON file with `vars`, `order` and `polys`; `-` reads stdin.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "modular")]
        method: Method,
    },
    /// Isolated real roots of a univariate polynomial file.
    Roots {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        positive: bool,
    },
    /// Checks the certificates of the flag existence argument.
    VerifyTheoremB {
        #[arg(long, requires = "p", conflicts_with = "grid")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        p: Option<u32>,
        /// Check every 2 <= p <= 3n/4 with n up to this bound.
        #[arg(long)]
        grid: Option<u32>,
        /// Sampling bound for expansion coefficients the shift test misses.
        #[arg(long, default_value_t = 100)]
        p_max: u32,
        /// Skip the Gröbner cross-checks.
        #[arg(long)]
        no_groebner: bool,
    },
    /// Solution counts along a Wallach family.
    Census {
        /// `n-2,1,1` or `n-3,1,2`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
    },
}
