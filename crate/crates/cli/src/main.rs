//! `menon`: evaluate arithmetic functions, verify gcd-sum identities and sweep
//! them over parameter ranges.
//!
//! Exit codes: 0 when everything matched, 1 on an identity mismatch or an
//! internal inconsistency, 2 on usage or domain errors, 3 when a budget,
//! overflow or resource limit aborted the work.

mod bench;
mod commands;
mod eval;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use menon::report::Format;
use menon::sweep::{IdentityKind, Span};

const NAMING: &str = "Parameter names are uniform across identities: k counts the unit-constrained \
coordinates m_1..m_k, r counts the free coordinates b_1..b_r, s is the power of the generalized \
gcd (a, b)_s, and --a gives the shifts a_1..a_k (default all ones).";

#[derive(Parser, Debug)]
#[command(name = "menon", version, about = "Exact gcd-sum identities and generalized totients", after_help = NAMING)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,
    /// Worker threads for sweeps [default: available cores].
    #[arg(long, visible_alias = "parallelism", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Maximum number of tuples any single enumeration may visit.
    #[arg(long, global = true, env = "ARITH_BUDGET", default_value = "10000000", value_parser = parse_budget)]
    budget: u128,
    /// Seed for randomized shifts and spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report wall-clock timings (makes json/csv output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Adds one to every right-hand side. Test hook for the exit-code contract.
    #[arg(long, global = true, hide = true)]
    falsify_rhs: bool,
}

impl Global {
    fn workers(&self) -> usize {
        self.jobs
            .map(|j| j as usize)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one arithmetic function.
    Eval(eval::EvalArgs),
    /// Print the prime factorization of n.
    Factor {
        #[arg(long)]
        n: String,
    },
    /// Verify one identity instance.
    #[command(after_help = NAMING)]
    Verify(VerifyArgs),
    /// Verify an identity over every point of a parameter range.
    #[command(after_help = NAMING)]
    Sweep(SweepArgs),
    /// Time the oracle, closed form and sieve strategies against each other.
    Bench(bench::BenchArgs),
    /// Order census and totients of a direct product of cyclic groups.
    Group {
        /// Cyclic factor orders, e.g. 2,4,6.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// menon, sury, li-kim, main, prime-power, rhs-equivalence,
    /// shifted-li-kim, units-only, single-unit, progression, group-product.
    #[arg(long, value_parser = parse_identity)]
    identity: IdentityKind,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Comma-separated shifts a_1..a_k.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<i64>>,
    /// Prime for prime-power.
    #[arg(long)]
    p: Option<u64>,
    /// Exponent t for prime-power.
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Divisor d for progression.
    #[arg(long)]
    d: Option<u64>,
    /// Residue r for progression, counting m ≡ r (mod d^s).
    #[arg(long, default_value_t = 0)]
    shift: u64,
    /// Second cyclic factor for group-product (first is --n).
    #[arg(long)]
    m: Option<u64>,
    /// Cyclic factors for group-product; overrides --n/--m.
    #[arg(long, value_delimiter = ',')]
    factors: Option<Vec<u64>>,
    /// Second route for rhs-equivalence: divisor-sum or main-at-one.
    #[arg(long, default_value = "divisor-sum")]
    via: String,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_identity)]
    identity: IdentityKind,
    /// Ranges are inclusive: 7, 1..500 or 1..=500.
    #[arg(long, value_parser = parse_span)]
    n: Span,
    #[arg(long, value_parser = parse_span, default_value = "1")]
    s: Span,
    #[arg(long, value_parser = parse_span, default_value = "1")]
    k: Span,
    #[arg(long, value_parser = parse_span, default_value = "0")]
    r: Span,
    #[arg(long, value_parser = parse_span, default_value = "2..7")]
    p: Span,
    #[arg(long, value_parser = parse_span, default_value = "1")]
    t: Span,
    /// Second factor range for group-product.
    #[arg(long, value_parser = parse_span, default_value = "1")]
    m: Span,
    /// Skip instances whose modulus n^s exceeds this.
    #[arg(long)]
    max_modulus: Option<u64>,
    /// Extra seeded shift vectors per instance besides all-ones.
    #[arg(long, default_value_t = 0)]
    random_shifts: u32,
    /// List every instance in table output, not only failures.
    #[arg(long)]
    all: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: menon::Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<IdentityKind, String> {
    s.parse().map_err(|e: menon::Error| e.to_string())
}

fn parse_span(s: &str) -> Result<Span, String> {
    s.parse().map_err(|e: menon::Error| e.to_string())
}

fn parse_budget(s: &str) -> Result<u128, String> {
    match s.trim().parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Aborted = 3,
}

impl Status {
    pub fn of_error(e: &menon::Error) -> Status {
        use menon::Error::*;
        match e {
            Domain(_) | Unsupported(_) => Status::Usage,
            Overflow | BoundExceeded { .. } | ResourceLimit(_) => Status::Aborted,
            Internal(_) => Status::Mismatch,
        }
    }
}

/// Text for stdout plus the resulting status.
pub type Output = Result<(String, Status), menon::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Eval(args) => eval::run(args, g.format, g.budget),
        Command::Factor { n } => commands::factor(n, g.format),
        Command::Verify(args) => commands::verify(args, g),
        Command::Sweep(args) => commands::sweep(args, g),
        Command::Bench(args) => bench::run(args, g.format, g.budget, g.seed),
        Command::Group { factors, s } => commands::group(factors, *s, g.format),
    };
    let status = match result {
        Ok((text, status)) => {
            print!("{text}");
            status
        }
        Err(e) => {
            eprintln!("error: {e}");
            Status::of_error(&e)
        }
    };
    ExitCode::from(status as u8)
}
