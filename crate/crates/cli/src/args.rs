use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "pureres",
    version,
    about = "Pure resolutions, syzygy bundles and Kronecker quivers on projective space"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand; embedded in every JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize)]
pub struct Config {
    /// Field characteristic: 0 for the rationals, otherwise an odd prime.
    #[arg(long, global = true, env = "PURERES_PRIME", default_value_t = 32003, value_parser = parse_prime)]
    pub prime: u64,
    /// Seed for all random choices.
    #[arg(long, global = true, env = "PURERES_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Extra twists on each side of computed twist windows.
    #[arg(long, global = true, default_value_t = 2)]
    pub slack: i64,
    /// Random points used by fiberwise checks.
    #[arg(long, global = true, default_value_t = 50)]
    pub sample_points: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    pureres::FieldDesc::new(p)
        .map(|_| p)
        .map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Koszul complex of n+1 generic forms of degree d and its syzygies.
    Koszul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// Resolution of a compressed Gorenstein algebra of socle degree 2t.
    Gorenstein {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Simple rank n bundle with homological dimension l.
    Anyhd(AnyHdArgs),
    /// Cohomology table h^q(E(t)) of a presentation file.
    Cohomology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        tmin: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        tmax: Option<i64>,
    },
    /// dim Ext^k(E, F) for k = 0..=kmax.
    Hom {
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Kronecker quiver computations.
    #[command(subcommand)]
    Quiver(QuiverCommand),
    /// Run a verification pipeline; exit code 0 iff every verdict passes.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run the syzygy pipeline on a resolution ending in O without
    /// asserting any outcome.
    Explore(ExploreArgs),
}

#[derive(Debug, Args)]
pub struct AnyHdArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value_t = 1)]
    pub d0: i64,
    /// Degrees d_2,...,d_l, comma separated; default is the least admissible.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub w: i64,
    #[arg(long)]
    pub a: i64,
    #[arg(long)]
    pub b: i64,
}

#[derive(Debug, Subcommand)]
pub enum QuiverCommand {
    /// q(a,b) = a^2 + b^2 - w a b.
    Tits(DimsArgs),
    /// Whether (a,b) is a Schur root of the w-arrow Kronecker quiver.
    Schur(DimsArgs),
    /// Generic simplicity class of cokernel bundles with this dimension vector.
    Verdict(DimsArgs),
    /// dim Hom and dim Ext^1 between two representation files.
    Homext {
        #[arg(long)]
        r1: PathBuf,
        #[arg(long)]
        r2: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Every pipeline on the default parameter grid.
    All,
    Anyhd(AnyHdArgs),
    Koszul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    Gorenstein {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    Quiver {
        /// Random representations for the Euler form identity.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct ExploreArgs {
    /// Presentation file of a resolution ending in O.
    #[arg(long = "in", conflicts_with_all = ["n", "degree", "count"])]
    pub input: Option<PathBuf>,
    /// Resolve `count` generic forms of degree `degree` on P^n instead.
    #[arg(long, requires_all = ["degree", "count"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub degree: Option<u32>,
    #[arg(long, requires = "n")]
    pub count: Option<usize>,
}
