use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "eigencone",
    version,
    about = "Verification and search tools for cubic minimal cones and their Hessian fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Master seed for all random streams
    #[arg(long, global = true, env = "EIGENCONE_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (defaults to all cores); never changes the output
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Write the report here instead of stdout; wall-clock goes to PATH.timing.json
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    W5,
    W4,
    #[value(name = "w5_delta")]
    W5Delta,
    U10,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    P4,
    P5,
    P12,
    P24,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact harmonicity, gradient and eigencubic identities for P4, P5, P12, P24
    VerifySymbolic {
        /// Read the five-variable cubic from a polynomial text file instead of building it
        #[arg(long, value_name = "FILE")]
        p5_from: Option<PathBuf>,
    },
    /// Compare numeric Hessian spectra of w5 with the closed forms
    Spectrum(SpectrumArgs),
    /// Sample (and optionally search) the difference family against a ratio band
    Certify(CertifyArgs),
    /// Search the Lawson family for a member outside the witness band
    WitnessLawson(WitnessArgs),
    /// Ratio extremes of P5/|x|^δ for several exponents
    ScanDelta(ScanArgs),
    /// Sample the ten-dimensional augmented family
    U10(U10Args),
    /// Value, gradient, Hessian and spectrum of a field at one point
    Eval(EvalArgs),
    /// Print a cubic in polynomial text format
    Dump {
        #[arg(long, value_enum)]
        poly: CubicKind,
    },
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Number of equally spaced levels in [-1, 1]
    #[arg(long, conflicts_with = "point", value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: Option<u32>,

    /// A unit vector in R^5, comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub point: Option<Vec<f64>>,

    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, value_enum, default_value_t = FieldKind::W5)]
    pub field: FieldKind,

    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// Pattern-search restarts run after sampling (0 disables the search)
    #[arg(long, default_value_t = 0)]
    pub restarts: u64,

    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.05, 20.0])]
    pub band: Vec<f64>,

    /// Exponent for w5_delta and u10
    #[arg(long)]
    pub delta: Option<f64>,

    /// Constant M for u10
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub big_m: f64,

    /// Also keep per-sample rows (always on with --format csv)
    #[arg(long)]
    pub rows: bool,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,

    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.01, 100.0])]
    pub band: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.25, 1.5, 2.0])]
    pub deltas: Vec<f64>,

    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
}

#[derive(Args, Debug)]
pub struct U10Args {
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,

    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub big_m: f64,

    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// Relative tolerance for the homogeneity check
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = FieldKind::W5)]
    pub field: FieldKind,

    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub point: Vec<f64>,

    #[arg(long)]
    pub delta: Option<f64>,

    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub big_m: f64,
}
