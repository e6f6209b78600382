//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::error::{CliError, CliResult};
use crate::output::{Format, Report};
use crate::suite::{Suite, DEFAULT_SEED};

pub const PRECISION_VAR: &str = "LEGTORS_PRECISION_BITS";

#[derive(Debug, Parser)]
#[command(name = "legtors", version, about = "Simultaneous torsion in the Legendre family y^2 = x(x-1)(x-λ)")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Legendre,
    Weierstrass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PsiCheck {
    Congruence,
    Degrees,
    Special,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print, evaluate or check a division polynomial.
    Psi(PsiArgs),
    /// Order of the point with x-coordinate x on E_λ, if at most --max.
    Order(OrderArgs),
    /// Certify infinite order by reducing modulo two primes.
    CertifyNontorsion(CertifyArgs),
    /// The bounded common torsion set T_N(α, β).
    Tset(TsetArgs),
    /// 2-adic screen of T(α, β) for rational α, β.
    Screen(ScreenArgs),
    /// T(ζ) among roots of unity for a primitive k-th root ζ.
    RootsOfUnity(RootsArgs),
    /// The three short Weierstrass curves through three points of order 2.
    WeierstrassScreen(WeierstrassArgs),
    /// Resultant R_m, or a pair eliminant with --pair.
    Resultant(ResultantArgs),
    /// Check every polynomial of a corpus file against the division polynomials and eliminants.
    VerifyTable1(Table1Args),
    /// Orbit census of components up to a bidegree.
    Census(CensusArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct PsiArgs {
    #[arg(long, value_enum, default_value_t = Family::Legendre)]
    pub family: Family,
    #[arg(long)]
    pub n: u64,
    /// Point of evaluation, e.g. `lambda=3,x=-1/2` or `a=-7,b=6,x=1`.
    #[arg(long)]
    pub eval: Option<String>,
    #[arg(long, value_enum)]
    pub check: Option<PsiCheck>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Number field `m(t);name=poly;...`, or one of zeta8, i-sqrtm2, sqrt2-tower, cyclotomic:K.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 16)]
    pub max: u64,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Comma-separated odd primes; defaults to the first primes of good reduction.
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct TsetArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long)]
    pub max_order: u64,
    #[arg(long)]
    pub field: Option<String>,
    /// A λ to try before root finding; repeatable.
    #[arg(long = "candidate", allow_hyphen_values = true)]
    pub candidates: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Settle every candidate and report T(α, β) exactly.
    #[arg(long)]
    pub decide: bool,
    #[arg(long, default_value_t = legtors_core::screen::DEFAULT_VERIFY_BOUND)]
    pub max: u64,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub order: u64,
    /// Confirm each member in ℚ(ζ_k).
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = legtors_core::screen::DEFAULT_VERIFY_BOUND)]
    pub max: u64,
}

#[derive(Debug, Args)]
pub struct WeierstrassArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x3: String,
    #[arg(long, default_value_t = 12)]
    pub max: u64,
}

#[derive(Debug, Args)]
pub struct ResultantArgs {
    #[arg(long, required_unless_present = "pair")]
    pub m: Option<u64>,
    /// Pair eliminant for orders `n,n2`.
    #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with = "m")]
    pub pair: Option<Vec<u64>>,
    #[arg(long)]
    pub check_squarefree: bool,
    /// Include the polynomial itself in the output.
    #[arg(long)]
    pub show: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Corpus file; defaults to the bundled one.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub max_bidegree: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Fast)]
    pub suite: Suite,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Precision from the environment, or the default.
pub fn precision_bits(value: Option<&str>) -> CliResult<u32> {
    match value {
        None => Ok(legtors_core::tset::TsetOptions::default().prec),
        Some(s) => match s.trim().parse::<u32>() {
            Ok(p) if (32..=1 << 16).contains(&p) => Ok(p),
            _ => Err(CliError::Usage(format!("{PRECISION_VAR} must be an integer in 32..=65536, got {s:?}"))),
        },
    }
}

fn dispatch(cli: &Cli) -> CliResult<Report> {
    let prec = precision_bits(std::env::var(PRECISION_VAR).ok().as_deref())?;
    match &cli.command {
        Command::Psi(a) => commands::psi(a),
        Command::Order(a) => commands::order(a),
        Command::CertifyNontorsion(a) => commands::certify(a),
        Command::Tset(a) => commands::tset(a, prec),
        Command::Screen(a) => commands::screen(a),
        Command::RootsOfUnity(a) => commands::roots_of_unity(a),
        Command::WeierstrassScreen(a) => commands::weierstrass_screen(a),
        Command::Resultant(a) => commands::resultant(a),
        Command::VerifyTable1(a) => commands::verify_table1(a),
        Command::Census(a) => commands::census(a),
        Command::Verify(a) => Ok(commands::verify(a)),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
