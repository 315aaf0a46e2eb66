use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sdmap", version, about = "Verify and classify sum-difference (SD) maps on fields")]
pub struct Cli {
    /// Seed for every sampled input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Also write the JSON payload to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Format of standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// key=value file with the same names as the flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic recurrence, the constraint on f(2) and the integer induction.
    VerifySymbolic(VerifySymbolic),
    /// Classify SD maps over prime fields.
    Classify(Classify),
    /// Quadratic-field suite: automorphisms, case formulas, contradiction, lattice.
    VerifyQuad(VerifyQuad),
    /// Floating-point smoke test over the complex numbers.
    VerifyComplex(VerifyComplex),
    /// Propagate fixed points along an arithmetic progression.
    ApDemo(ApDemo),
    /// Non-surjective SD maps g(x) -> g(x^k) on Q(x).
    Counterexamples(Counterexamples),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifySymbolic(_) => "verify-symbolic",
            Command::Classify(_) => "classify",
            Command::VerifyQuad(_) => "verify-quad",
            Command::VerifyComplex(_) => "verify-complex",
            Command::ApDemo(_) => "ap-demo",
            Command::Counterexamples(_) => "counterexamples",
        }
    }
}

pub const COMMAND_NAMES: [&str; 6] = [
    "verify-symbolic",
    "classify",
    "verify-quad",
    "verify-complex",
    "ap-demo",
    "counterexamples",
];

#[derive(Debug, Args)]
pub struct VerifySymbolic {
    /// Bound N for the check f(n) = n, n <= N.
    #[arg(long, default_value_t = 1000)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct Classify {
    /// Comma-separated odd primes.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13")]
    pub primes: Vec<u64>,

    /// Strongest brute-force oracle allowed: auto, all-maps, constrained or none.
    #[arg(long, default_value = "auto")]
    pub max_oracle_tier: String,

    #[arg(long, default_value_t = 10007)]
    pub max_prime: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapChoice {
    Identity,
    Conj,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyQuad {
    /// Non-square rational d.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub d: String,

    #[arg(long, value_enum, default_value_t = MapChoice::Both)]
    pub map: MapChoice,

    /// Grid bounds MxN for m + n*sqrt(d), |m| <= M, |n| <= N.
    #[arg(long, default_value = "20x20")]
    pub grid: String,

    /// Seeded pairs per automorphism check.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyComplex {
    /// Mixed absolute/relative tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApMap {
    Identity,
    Conj,
}

#[derive(Debug, Args)]
pub struct ApDemo {
    /// First term: a rational or a+b*sqrt(d).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,

    /// Common difference, same grammar as --a.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub d: String,

    #[arg(long, default_value_t = 10)]
    pub steps: usize,

    /// Candidate map; conj needs a quadratic field.
    #[arg(long, value_enum, default_value_t = ApMap::Identity)]
    pub map: ApMap,
}

#[derive(Debug, Args)]
pub struct Counterexamples {
    /// Comma-separated exponents k >= 2.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub k: Vec<usize>,

    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}
