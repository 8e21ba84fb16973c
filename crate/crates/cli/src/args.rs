use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prac::folding::CodeParams;
use prac::gf2poly::BinaryPolynomial;

#[derive(Debug, Parser)]
#[command(name = "prac", version, about = "Construct and verify pseudo-random arrays and array codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Census,
    Setpoly,
    Det,
    Sufficient,
    All,
}

impl CriterionArg {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Census => "census",
            Self::Setpoly => "setpoly",
            Self::Det => "det",
            Self::Sufficient => "sufficient",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold every sequence of a polynomial into r1 x r2 arrays and write them
    /// in the array file format.
    Construct {
        #[arg(long, value_parser = parse_poly)]
        poly: BinaryPolynomial,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify an array file by window census and shift-and-add closure.
    Verify {
        /// Array file; parameters come from its header unless given as flags.
        file: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Compute the product polynomial whose roots are all products of roots
    /// of the two inputs.
    Vee {
        #[arg(long, value_parser = parse_poly)]
        f1: BinaryPolynomial,
        #[arg(long, value_parser = parse_poly)]
        f2: BinaryPolynomial,
    },
    /// Decide whether folding the sequences of a polynomial gives a code with
    /// the window property.
    CheckFold {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = CriterionArg::All)]
        criterion: CriterionArg,
        /// Also scan every subset of the position set.
        #[arg(long)]
        exhaustive_setpoly: bool,
    },
    /// List the irreducible polynomials of degree n1 n2 and exponent r1 r2.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        /// Check each polynomial's folding with this criterion.
        #[arg(long, value_enum)]
        criterion: Option<CriterionArg>,
    },
    /// Classify a polynomial, or the construction built from two polynomials.
    Classify {
        #[arg(long, value_parser = parse_poly, conflicts_with_all = ["f1", "f2"], required_unless_present_all = ["f1", "f2"])]
        poly: Option<BinaryPolynomial>,
        #[arg(long, value_parser = parse_poly, requires = "f2")]
        f1: Option<BinaryPolynomial>,
        #[arg(long, value_parser = parse_poly, requires = "f1")]
        f2: Option<BinaryPolynomial>,
    },
    /// Test products of passing irreducible polynomials for the window property.
    Conjecture {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Also run the census on products up to this degree.
        #[arg(long, default_value_t = 24)]
        census_limit: usize,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    #[arg(long, value_parser = parse_poly)]
    pub poly: Option<BinaryPolynomial>,
    /// Comma-separated irreducible factors.
    #[arg(long, value_delimiter = ',', value_parser = parse_poly)]
    pub factors: Option<Vec<BinaryPolynomial>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub r1: Option<usize>,
    #[arg(long)]
    pub r2: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
}

impl ParamArgs {
    pub fn periods(&self) -> anyhow::Result<(usize, usize)> {
        match (self.r1, self.r2) {
            (Some(r1), Some(r2)) => Ok((r1, r2)),
            _ => anyhow::bail!("--r1 and --r2 are required"),
        }
    }

    pub fn full(&self) -> anyhow::Result<CodeParams> {
        let (r1, r2) = self.periods()?;
        match (self.n1, self.n2) {
            (Some(n1), Some(n2)) => Ok(CodeParams::new(r1, r2, n1, n2)),
            _ => anyhow::bail!("--n1 and --n2 are required"),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.r1.is_none() && self.r2.is_none() && self.n1.is_none() && self.n2.is_none()
    }
}

fn parse_poly(s: &str) -> Result<BinaryPolynomial, String> {
    s.trim().parse().map_err(|e: prac::Error| e.to_string())
}
