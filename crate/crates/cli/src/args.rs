use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hfmotive_core::grchow::IntegrationMode;

#[derive(Parser, Debug)]
#[command(name = "hfmotive", version, about = "Osculating planes and condition (B) for hypersurfaces, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report for one triple (n, d, kappa).
    Compute(ComputeArgs),
    /// Reports for every triple in a range.
    Scan(ScanArgs),
    /// Check the numeric claims about condition (B) over a scan range.
    VerifyClaims(VerifyArgs),
    /// The coefficients beta_i of a_{n-1}.
    Betas(BetasArgs),
    /// Integrate a class expression over the Grassmannian.
    Integrate(IntegrateArgs),
}

#[derive(Args, Debug)]
pub struct Triple {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub kappa: u32,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub triple: Triple,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long, default_value = "schur", value_parser = parse_mode)]
    pub mode: IntegrationMode,
    /// JSON file of previously computed reports.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1)]
    pub kappa_min: u32,
    #[arg(long)]
    pub kappa_max: u32,
    #[arg(long, default_value_t = 1)]
    pub d_min: u32,
    #[arg(long)]
    pub d_max: u32,
    #[arg(long)]
    pub n_max: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
    #[arg(long, default_value = "schur", value_parser = parse_mode)]
    pub mode: IntegrationMode,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub kappa_max: u32,
    #[arg(long, default_value_t = 6)]
    pub d_max: u32,
    #[arg(long, default_value_t = 12)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[arg(long, default_value = "both", value_parser = parse_mode)]
    pub mode: IntegrationMode,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BetasArgs {
    #[command(flatten)]
    pub triple: Triple,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[arg(long, default_value = "schur", value_parser = parse_mode)]
    pub mode: IntegrationMode,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub kappa: u32,
    /// e.g. `xi(2)*cqe(3,2)`, `s[2,1]^2`, `e1^4`.
    #[arg(long)]
    pub expr: String,
    #[arg(long, default_value = "schur", value_parser = parse_mode)]
    pub mode: IntegrationMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

fn parse_mode(s: &str) -> Result<IntegrationMode, String> {
    s.parse()
}
