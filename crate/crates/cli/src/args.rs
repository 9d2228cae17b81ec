use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use icis_core::verifier::SweepClaim;

/// Exact invariants of homogeneous complete intersection singularities.
#[derive(Debug, Clone, Parser)]
#[command(name = "icis", version)]
pub struct Cli {
    /// Emit one JSON report object
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit the records as CSV
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Human
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Milnor number and geometric genus of one germ
    Invariants(InvariantsArgs),
    /// Table of the bound coefficients C_{n,r}
    Coeff(CoeffArgs),
    /// Exhaustive verification sweep of one claim
    Verify(VerifyArgs),
    /// Combinatorial inequality and mean orderings at seeded rational points
    Ineq(IneqArgs),
    /// Ratio mu/p_g against its limit along equal-degree germs
    Sharpness(SharpnessArgs),
    /// Re-run the command embedded in a JSON report and compare byte for byte
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Invariants(_) => "invariants",
            Command::Coeff(_) => "coeff",
            Command::Verify(_) => "verify",
            Command::Ineq(_) => "ineq",
            Command::Sharpness(_) => "sharpness",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub n: u32,
    /// Comma-separated degrees p_1,...,p_r
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<u64>,
    /// Also evaluate both oracle formulas; exit 1 on mismatch
    #[arg(long)]
    pub oracle_check: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffArgs {
    /// Dimension range, `a..b` or a single value
    #[arg(long)]
    pub n: Span,
    /// Codimension range, `a..b` or a single value
    #[arg(long)]
    pub r: Span,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// strong-durfee | new-conjecture | surface | thm3 | expansion
    #[arg(value_parser = parse_claim)]
    pub claim: SweepClaim,
    #[arg(long, default_value = "2")]
    pub n: Span,
    #[arg(long, default_value = "1")]
    pub r: Span,
    /// Smallest degree; defaults to the claim's minimum
    #[arg(long)]
    pub pmin: Option<u64>,
    #[arg(long, default_value_t = 6)]
    pub pmax: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Succeed only if violations are found
    #[arg(long)]
    pub expect_violations: bool,
    /// Report every verdict, not only violations
    #[arg(long)]
    pub all: bool,
    /// Worker threads; 0 picks the number of cores
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct IneqArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub ell: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SharpnessArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: usize,
    /// Comma-separated increasing degrees, each at least 2
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// JSON report written with `--json`
    pub report: PathBuf,
}

fn parse_claim(s: &str) -> Result<SweepClaim, String> {
    s.parse().map_err(|e: icis_core::Error| e.to_string())
}

/// Inclusive integer range written `a..b`, or `a` for a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn range(self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }

    pub fn range_usize(self) -> RangeInclusive<usize> {
        self.lo as usize..=self.hi as usize
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("'{t}': {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}
