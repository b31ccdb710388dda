//! `stern`: Stern polynomials, congruence searches, table reproduction and
//! identity checks from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error, 2 usage
//! error, 3 search bound above the hard cap.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stern_core::search::DEFAULT_CAP;

#[derive(Parser, Debug)]
#[command(name = "stern", version, about = "Stern polynomials and their coefficient congruences")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for searches and sweeps.
    #[arg(long, global = true, env = "STERN_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Hard cap on any search bound.
    #[arg(long, global = true, env = "STERN_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print B_n as ascending coefficients.
    Poly(PolyArgs),
    /// Enumerate odd solutions of the congruence up to a bound.
    Search(SearchArgs),
    /// Reproduce one of the reference tables (1 to 5).
    Table(TableArgs),
    /// Counting-function curves as CSV.
    Plotdata(PlotArgs),
    /// Check an identity over a parameter range.
    Verify(VerifyArgs),
    /// Record observations for a conjecture over a grid.
    Conjecture(ConjectureArgs),
    /// Fit affine families U_n = p 4^n + q 2^n + u to a solutions file.
    Mine(MineArgs),
    /// List recorded misprints with their recomputed evidence.
    Errata,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Index: decimal, 2^a+b, 2^a-b, or a family reference like p[3,2].
    pub index: String,
    /// Reduce coefficients modulo m.
    #[arg(long = "mod")]
    pub modulus: Option<u32>,
    /// Evaluate at an integer instead of printing coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub eval: Option<i64>,
    /// Print the degree instead of coefficients.
    #[arg(long, conflicts_with = "eval")]
    pub degree: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub m: u32,
    /// Search bound x (inclusive).
    #[arg(long = "max")]
    pub max: u64,
    /// Print only the count.
    #[arg(long)]
    pub count: bool,
    /// Families to leave out, comma separated (e.g. trivial-all-ones,trivial-twos).
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<String>,
    /// Write solutions here instead of stdout (the count goes to stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Checkpoint file; an existing one is resumed.
    #[arg(long)]
    pub resume: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Which table, 1 to 5.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    pub which: u8,
    /// Largest k for table 1.
    #[arg(long, default_value_t = 20)]
    pub kmax: u32,
    /// Search bound for tables 2 to 4.
    #[arg(long = "max", default_value_t = 1 << 20)]
    pub max: u64,
    /// Exit with code 1 if any compared row disagrees.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// pi02, pi12, ratio, norm02 or norm12.
    #[arg(long)]
    pub series: String,
    #[arg(long = "xmax")]
    pub x_max: u64,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub identity: String,
    /// Parameter ranges such as a=1..8,m=1..64; defaults fill the rest.
    #[arg(long, default_value = "")]
    pub range: String,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    /// C1.1, C1.2, C1.3, C2.1 to C2.5, C3, minus-one or s1-factors.
    pub id: String,
    #[arg(long, default_value = "")]
    pub grid: String,
}

#[derive(Args, Debug)]
pub struct MineArgs {
    /// Solutions CSV as written by `search --output`.
    #[arg(long)]
    pub input: PathBuf,
    /// Terms U_4, U_5, ... checked per candidate.
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let result = match cli.command {
        Command::Poly(a) => commands::poly(&a, c),
        Command::Search(a) => commands::search(&a, c),
        Command::Table(a) => commands::table(&a, c),
        Command::Plotdata(a) => commands::plotdata(&a, c),
        Command::Verify(a) => commands::verify(&a, c),
        Command::Conjecture(a) => commands::conjecture(&a, c),
        Command::Mine(a) => commands::mine(&a, c),
        Command::Errata => commands::errata(c),
    };
    match result {
        Ok(code) => code,
        Err(e) if commands::is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
