//! `tdbell`: sequence tables, single values and identity checks.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 invalid arguments,
//! 3 I/O failure. A relative `--output` path is resolved against
//! `TDBELL_OUTPUT_DIR` when that variable is set.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tdbell::sequences::{self, Family, TableParams, Value};
use tdbell::verify::{self, CheckArgs, Grid, NumericConfig, SuiteReport};
use tdbell::{parse_rational, Lambda, Rational};

const OUTPUT_DIR_VAR: &str = "TDBELL_OUTPUT_DIR";
const DEFAULT_ORDER: usize = 24;

#[derive(Parser)]
#[command(name = "tdbell", version, about = "Degenerate and truncated Bell-type sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a table of a sequence family for n <= n_max.
    Table(TableCmd),
    /// Print one exact value.
    Eval(EvalCmd),
    /// Run one identity check and write its verdicts as JSON.
    Check(CheckCmd),
    /// Run the identity suite over a grid and write the report as JSON.
    Suite(SuiteCmd),
}

#[derive(Args)]
struct FamilyArgs {
    /// S1, S2, S1deg, S2deg, S2degPoly, BernoulliDeg, BellDeg, TruncBellDeg,
    /// TruncModBellDeg or BellClassical.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Degeneracy parameter as "num/den".
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Lambda,
    /// Truncation index of the truncated Bell families.
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Order of the degenerate Bernoulli polynomials.
    #[arg(long, default_value_t = 0)]
    r: usize,
}

impl FamilyArgs {
    fn params(&self) -> TableParams {
        TableParams {
            lambda: self.lambda.clone(),
            p: self.p,
            r: self.r,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NumericArgs {
    #[arg(long, default_value_t = 1e-7)]
    tol_rel: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol_abs: f64,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Simpson panels on the unit circle; must be even.
    #[arg(long, default_value_t = 512)]
    quad_nodes: usize,
    /// Outer cutoff of the Dobinski-type double series.
    #[arg(long, default_value_t = 80)]
    cutoff_k: usize,
    /// Inner cutoff of the Dobinski-type double series.
    #[arg(long, default_value_t = 80)]
    cutoff_l: usize,
    #[arg(long, default_value_t = 200_000)]
    mc_samples: usize,
}

impl NumericArgs {
    fn config(&self) -> NumericConfig {
        NumericConfig {
            tol_rel: self.tol_rel,
            tol_abs: self.tol_abs,
            quad_nodes: self.quad_nodes,
            series_cutoff_k: self.cutoff_k,
            series_cutoff_l: self.cutoff_l,
            mc_samples: self.mc_samples,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct TableCmd {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EvalCmd {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// Column index; required for the triangular families.
    #[arg(long)]
    k: Option<usize>,
    /// Evaluate a polynomial family at this point ("num/den").
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    x: Option<Rational>,
}

#[derive(Args)]
struct CheckCmd {
    /// Identity id, for example T1, P5b, L9 or C-SIX.
    #[arg(long)]
    id: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Lambda,
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Series truncation order; 24 or the smallest order the check needs.
    #[arg(long)]
    order: Option<usize>,
    /// Block count of L9; every k <= n_max when absent.
    #[arg(long)]
    k: Option<usize>,
    /// Evaluation point of T15; 0, 1 and 1/2 when absent.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    x: Option<Rational>,
    #[command(flatten)]
    numeric: NumericArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SuiteCmd {
    /// λ in {0, 1, 1/2, -1/3}, p in 0..=4, n_max 10, order 24.
    #[arg(long, conflicts_with_all = ["lambda", "p", "n_max", "order"])]
    default_grid: bool,
    /// λ values, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Vec<Lambda>,
    /// Truncation indices, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Run only this identity.
    #[arg(long)]
    id: Option<String>,
    #[command(flatten)]
    numeric: NumericArgs,
    #[command(flatten)]
    out: OutputArgs,
}

impl SuiteCmd {
    fn grid(&self) -> Grid {
        let default = Grid::default_grid();
        if self.default_grid {
            return default;
        }
        Grid {
            lambdas: if self.lambda.is_empty() {
                default.lambdas
            } else {
                self.lambda.clone()
            },
            ps: if self.p.is_empty() { default.ps } else { self.p.clone() },
            n_max: self.n_max,
            order: self.order,
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: tdbell::Error| e.to_string())
}

fn parse_lambda(s: &str) -> Result<Lambda, String> {
    s.parse().map_err(|e: tdbell::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Io(m) => m,
        }
    }
}

impl From<tdbell::Error> for Failure {
    fn from(e: tdbell::Error) -> Self {
        match e {
            tdbell::Error::Io(_) | tdbell::Error::Csv(_) => Failure::Io(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => {
            let path = resolve(path);
            std::fs::write(&path, text)
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_table(cmd: &TableCmd) -> Result<u8, Failure> {
    let table = sequences::table(cmd.family.family, &cmd.family.params(), cmd.n_max)?;
    let text = match cmd.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json() + "\n",
    };
    emit(&cmd.out, &text)?;
    Ok(0)
}

fn cmd_eval(cmd: &EvalCmd) -> Result<u8, Failure> {
    let family = cmd.family.family;
    let k = match (family.is_triangular(), cmd.k) {
        (true, Some(k)) => k,
        (true, None) => return Err(Failure::Invalid(format!("{family} needs --k"))),
        (false, Some(_)) => return Err(Failure::Invalid(format!("{family} takes no --k"))),
        (false, None) => 0,
    };
    let table = sequences::table(family, &cmd.family.params(), cmd.n)?;
    let value = match (table.get(cmd.n, k), &cmd.x) {
        (Value::Poly(poly), Some(x)) => Value::Rational(poly.eval(x)),
        (Value::Rational(_), Some(_)) => {
            return Err(Failure::Invalid(format!("{family} is not a polynomial family; drop --x")))
        }
        (value, None) => value,
    };
    println!("{value}");
    Ok(0)
}

fn cmd_check(cmd: &CheckCmd) -> Result<u8, Failure> {
    let cfg = cmd.numeric.config();
    cfg.validate()?;
    let mut args = CheckArgs::new(&cmd.lambda, cmd.p, cmd.n_max);
    args.order = Some(
        cmd.order
            .unwrap_or_else(|| DEFAULT_ORDER.max(verify::min_order(&cmd.id, cmd.n_max, cmd.p))),
    );
    args.k = cmd.k;
    args.x = cmd.x.clone();
    let report = SuiteReport::from_verdicts(verify::run_check(&cmd.id, &args, &cfg)?);
    emit(&cmd.out, &report.to_json())?;
    Ok(report.exit_code() as u8)
}

fn cmd_suite(cmd: &SuiteCmd) -> Result<u8, Failure> {
    let report = verify::run_suite(&cmd.grid(), &cmd.numeric.config(), cmd.id.as_deref())?;
    emit(&cmd.out, &report.to_json())?;
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Table(c) => cmd_table(c),
        Command::Eval(c) => cmd_eval(c),
        Command::Check(c) => cmd_check(c),
        Command::Suite(c) => cmd_suite(c),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("tdbell: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
