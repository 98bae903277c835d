use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superosc::evolution::DrivenOscillatorConfig;
use superosc::io::Grid;

#[derive(Debug, Parser)]
#[command(name = "superosc", version, about = "Superoscillating sequences, their evolution and weak values")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Significand bits for cancelling sums (default: derived from n and a)
    #[arg(long, global = true)]
    pub precision_bits: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub output: Format,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Absolute tolerance for the driven-oscillator quadratures
    #[arg(long, global = true, default_value_t = DrivenOscillatorConfig::DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequencies k_j and coefficients C_j of the prototype
    Coeffs(Coeffs),
    /// F_n(x, a) on a grid with its distance to e^{iax}
    Eval(Eval),
    /// Pointwise, leading-order and supremum errors
    Error(ErrorCmd),
    /// Exact Taylor moments as Gaussian rationals
    Moments(Moments),
    /// Multinomial against Taylor moments for every n, p up to the limits
    IdentityCheck(IdentityCheck),
    /// Superoscillatory shift of a band-limited or Gaussian signal
    Approx(Approx),
    /// Dirichlet-type data approximated by prototype shifts
    Dirichlet(Dirichlet),
    /// Time evolution of the prototype under a chosen law
    Evolve(Evolve),
    /// Weak value or ABL distribution of an observable
    Weak(Weak),
    /// Pointer distributions after a weak measurement
    Pointer(Pointer),
    /// Operator norms and convergence on spectral windows
    Spectral(Spectral),
    /// Rotation weak values and Wigner columns
    Wigner(Wigner),
    /// Every acceptance check, one row per check
    VerifyAll,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Coeffs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    /// Add the exact rational coefficient (a is read as its exact binary value)
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Product,
    Sum,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Eval {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Grid,
    #[arg(long, value_enum, default_value_t = Form::Product)]
    pub form: Form,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ErrorCmd {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Grid,
    /// Half-width of the supremum interval (default: the largest |x| of the grid)
    #[arg(long)]
    pub m: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Moments {
    #[arg(long)]
    pub n: usize,
    /// Rational parameter such as 2 or 5/2
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 6)]
    pub p_max: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct IdentityCheck {
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 6)]
    pub p_max: usize,
    /// Rational parameter such as 2 or 5/2
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalKind {
    Fejer,
    RaisedCosine,
    Bump,
    Ualpha,
    Gaussian,
    /// Spectrum read from --spectrum
    File,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Approx {
    #[arg(long, value_enum)]
    pub signal: SignalKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Grid,
    /// Derivative order
    #[arg(long, default_value_t = 0)]
    pub order: u32,
    /// Width parameter of the ualpha and gaussian signals
    #[arg(long, default_value_t = 10.0)]
    pub alpha: f64,
    /// Spectral samples for the built-in band-limited signals
    #[arg(long, default_value_t = 2001)]
    pub samples: usize,
    /// Three-column spectrum file (lambda, Re, Im)
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Dirichlet {
    /// Real parts of c_j, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<f64>,
    /// Imaginary parts of c_j, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs_im: Option<Vec<f64>>,
    /// Frequencies lambda_j > 1, comma separated
    #[arg(long, value_delimiter = ',')]
    pub freqs: Vec<f64>,
    /// Number of terms kept (default: all)
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawName {
    Free,
    Heat,
    Wave,
    Modified,
    PoweredDatum,
    Symbol,
    Oscillator,
    OscillatorPowered,
    Driven,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Evolve {
    #[arg(long, value_enum)]
    pub law: LawName,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Grid,
    #[arg(long, allow_hyphen_values = true)]
    pub t_grid: Grid,
    /// Order of the modified and powered laws
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Power of the datum for the powered-datum law
    #[arg(long, default_value_t = 1)]
    pub ell: u32,
    /// Wave speed
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Degree of the truncated geometric symbol 1/(1 - z)
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Constant driving force
    #[arg(long, default_value_t = 0.0)]
    pub force: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

#[derive(Debug, Args)]
pub struct Weak {
    /// sigma-x, sigma-y, sigma-z, sigma-xi or an observable file
    #[arg(long)]
    pub observable: String,
    /// up-z, down-z, up-x, down-x, up-y, down-y or a state file
    #[arg(long)]
    pub pre: String,
    #[arg(long)]
    pub post: String,
    /// Emit the ABL distribution instead of the weak value
    #[arg(long)]
    pub abl: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    Binomial,
    Literal,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Pointer {
    /// Number of spins in the ensemble
    #[arg(long = "N", default_value_t = 1)]
    pub spins: usize,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub q_grid: Grid,
    #[arg(long, value_enum, default_value_t = Weights::Binomial)]
    pub weights: Weights,
    /// Use the single-spin distribution (ignores --N and --weights)
    #[arg(long)]
    pub single: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowKind {
    Compact,
    Truncated,
    FullLine,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Spectral {
    /// Orders, comma separated
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub a: f64,
    #[arg(long, value_enum)]
    pub window: WindowKind,
    /// Half-width of the compact window
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Exponent of the truncated window
    #[arg(long, default_value_t = 3.0)]
    pub gamma: f64,
    /// Two-column spectral density file (lambda, weight)
    #[arg(long)]
    pub density: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Wigner {
    /// Spin, a positive multiple of 1/2
    #[arg(long)]
    pub ell: f64,
    #[arg(long)]
    pub theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub dphi_grid: Option<Grid>,
    /// Emit the column d_{m'l}(theta) instead of weak values
    #[arg(long)]
    pub column: bool,
}
