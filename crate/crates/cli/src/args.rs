use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qident_core::verify::ReportFormat;

#[derive(Debug, Parser)]
#[command(
    name = "qident",
    version,
    about = "Evaluate q-special functions and verify q-series identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one kernel function and print its value and error bound.
    Eval(EvalArgs),
    /// Verify catalog records on a grid of q values.
    Verify(VerifyArgs),
    /// Run q -> 1 limit studies at q_k = 1 - 2^-k.
    Limit(LimitArgs),
    /// List the catalog.
    List(ListArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Function {
    QInt,
    QFactorial,
    PochFinite,
    PochInfinite,
    QGamma,
    PochGeneral,
    SinQ,
    PiQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Tsv => ReportFormat::Tsv,
            Format::Jsonl => ReportFormat::Jsonl,
        }
    }
}

#[derive(Debug, Args)]
pub struct Precision {
    /// Working precision in bits (at least 64).
    #[arg(long, env = "QIDENT_PRECISION_BITS", default_value_t = 256)]
    pub precision: u32,
    /// Relative tolerance, e.g. 1e-30. Defaults to 1e-30, or what the
    /// precision supports if that is coarser.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Cap on terms or factors per series or product.
    #[arg(long, default_value_t = 100_000)]
    pub max_terms: u64,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Catalog file whose records are added to the built-in ones.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[command(flatten)]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub catalog: CatalogArgs,
    /// Comma-separated record ids. Default: every record of --catalog, or
    /// the built-in catalog.
    #[arg(long, value_delimiter = ',')]
    pub ids: Vec<String>,
    /// Comma-separated q values in (0,1).
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
    pub q_grid: Vec<String>,
    #[command(flatten)]
    pub precision: Precision,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub catalog: CatalogArgs,
    /// Comma-separated record ids with limit targets, or PI_Q / SIN_Q.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ids: Vec<String>,
    /// Inclusive range of k, written a..b.
    #[arg(long, value_parser = parse_k_range, default_value = "2..8")]
    pub k_range: RangeInclusive<u32>,
    #[command(flatten)]
    pub precision: Precision,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[command(flatten)]
    pub catalog: CatalogArgs,
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end '{b}'"))?;
    if a == 0 || b < a {
        return Err(format!("range {a}..{b} must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("2..8").unwrap(), 2..=8);
        assert_eq!(parse_k_range("3..=5").unwrap(), 3..=5);
        assert!(parse_k_range("0..4").is_err());
        assert!(parse_k_range("5..4").is_err());
        assert!(parse_k_range("5").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
