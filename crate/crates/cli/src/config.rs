use clap::{Args, ValueEnum};
use slrec_core::engines::DEFAULT_HORIZON;
use slrec_core::polyfield::DEFAULT_DEGREE_CAP;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct RunConfig {
    /// Window rows (values of m).
    #[arg(short = 'M', long = "rows", global = true, default_value_t = 8)]
    pub m: u64,
    /// Window columns (values of n).
    #[arg(short = 'N', long = "cols", global = true, default_value_t = 8)]
    pub n: u64,
    /// Only count nonzero common points.
    #[arg(long, global = true)]
    pub exclude_zero: bool,
    /// Largest iterate degree the oracle will build.
    #[arg(
        long,
        global = true,
        env = "SLREC_DEGREE_CAP",
        default_value_t = DEFAULT_DEGREE_CAP,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub degree_cap: u64,
    /// Search horizon for affine cases without an a priori bound.
    #[arg(
        long,
        global = true,
        default_value_t = DEFAULT_HORIZON,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub horizon: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 8,
            n: 8,
            exclude_zero: false,
            degree_cap: DEFAULT_DEGREE_CAP,
            horizon: DEFAULT_HORIZON,
            format: Format::Json,
            seed: 0,
        }
    }
}
