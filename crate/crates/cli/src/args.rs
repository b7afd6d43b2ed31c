use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "concount",
    version,
    about = "Count and bound constrained binary codes"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Report wall-clock time (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of codewords of a linear code that satisfy a constraint.
    Count(CountArgs),
    /// Weight distribution of a constrained set, optionally restricted to a code.
    WeightDist(WeightDistArgs),
    /// LP upper bounds on constrained codes with a given minimum distance.
    Bound(BoundArgs),
    /// Exact character sums of a constraint.
    Fourier(FourierArgs),
    /// Recompute a published table and compare cell by cell.
    Table(TableArgs),
    /// Run the built-in property suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dual,
    Direct,
    Brute,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// rm:m=,r= | hamming:m= | simplex:m= | file:PATH
    #[arg(long)]
    pub code: String,
    /// 2charge | subblock:p=,z= | rll:d= | odd-strict | odd | even-strict | weight:i= | none
    #[arg(long)]
    pub constraint: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct WeightDistArgs {
    #[arg(long)]
    pub constraint: String,
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    pub n: Option<usize>,
    #[arg(long)]
    pub code: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LpArg {
    /// Full-space program (plain Delsarte when unconstrained).
    Del,
    /// Orbit-symmetrized program.
    DelSym,
    Gensph,
    /// Default program plus both comparators.
    All,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "none")]
    pub constraint: String,
    /// Defaults to del-sym where orbits are available, del otherwise.
    #[arg(long, value_enum)]
    pub lp: Option<LpArg>,
    /// Write the primary model in plain tabular form.
    #[arg(long)]
    pub lp_dump: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    #[arg(long)]
    pub constraint: String,
    /// Word(s) s, coordinate 1 first. Repeatable.
    #[arg(long = "word", conflicts_with = "n", required_unless_present = "n")]
    pub words: Vec<String>,
    /// List F(s) for every s of this length.
    #[arg(long)]
    pub n: Option<usize>,
    /// With --n: sum F over each weight class instead.
    #[arg(long, requires = "n")]
    pub by_weight: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// I, II, III, IV, V, VI, even-counts, even-weights or odd-counts
    #[arg(long)]
    pub id: String,
    /// Skip cells whose blocklength exceeds this.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Comma-separated suite names or letters a-f; `fourier` selects the spectral ones.
    #[arg(long, default_value = "all")]
    pub suites: String,
    /// Corrupt one oracle value to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
