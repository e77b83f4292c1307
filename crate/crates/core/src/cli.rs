//! Command-line front end.
//!
//! Exit codes: `0` when the checked relation or theorem holds, `1` when it was
//! checked and does not hold, `2` for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::loglindley::LLParams;
use crate::parallel::ParallelSystem;
use crate::stochorder::{
    check_order, randomized_theorem_sweep, run_counterexample, CounterexampleId, Grid, GridSpec, Relation, Spacing,
    TheoremId, DEFAULT_TOL,
};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the default grid size.
pub const GRID_ENV: &str = "LLORDER_GRID_N";

#[derive(Debug, Parser)]
#[command(name = "llorder", version, about = "Log-Lindley parallel systems and stochastic-order checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate pdf, cdf, reversed hazard and hazard of one LL(σ, λ).
    Eval(EvalArgs),
    /// Check a stochastic order between two systems given as JSON files.
    Compare(CompareArgs),
    /// Run a randomized sweep of one theorem.
    Theorem(TheoremArgs),
    /// Reproduce a built-in counterexample as an `x,ratio` curve.
    Counterexample(CounterexampleArgs),
    /// Draw inverse-transform samples from LL(σ, λ).
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Number of grid points.
    #[arg(long = "grid-n", env = GRID_ENV, default_value_t = crate::stochorder::DEFAULT_GRID_N)]
    grid_n: usize,
    /// Distance of the outermost grid points from 0 and 1.
    #[arg(long, default_value_t = crate::stochorder::DEFAULT_EPS)]
    eps: f64,
    /// Point placement.
    #[arg(long, value_enum, default_value_t = SpacingArg::Refined)]
    spacing: SpacingArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpacingArg {
    Uniform,
    Refined,
}

impl GridArgs {
    fn build(&self) -> Result<Grid, CliError> {
        let spacing = match self.spacing {
            SpacingArg::Uniform => Spacing::Uniform,
            SpacingArg::Refined => Spacing::Refined,
        };
        Grid::new(GridSpec {
            n: self.grid_n,
            eps: self.eps,
            spacing,
        })
        .map_err(|e| CliError::flag("--grid-n/--eps", e))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
    /// Evaluation points in (0, 1), comma separated. Defaults to the grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    x: Vec<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// JSON array of {"sigma", "lambda"} objects for system X.
    #[arg(long = "x-system")]
    x_system: PathBuf,
    /// JSON array of {"sigma", "lambda"} objects for system Y.
    #[arg(long = "y-system")]
    y_system: PathBuf,
    /// lr, hr, rhr or st.
    #[arg(long, default_value = "rhr")]
    relation: String,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    /// T3.1, T3.2, T3.3, T3.4 or T3.5.
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Components per system (default 3, or 4 for T3.4).
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Summary path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the first failing pair to PREFIX.x.json and PREFIX.y.json.
    #[arg(long = "dump-failing")]
    dump_failing: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    /// CE3.1, CE3.2a or CE3.2b.
    #[arg(long)]
    id: String,
    #[command(flatten)]
    grid: GridArgs,
    /// CSV path; the curve goes to stdout (and the verdict to stderr) when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError(String);

impl CliError {
    fn flag(flag: &str, e: Error) -> Self {
        CliError(format!("{flag}: {e}"))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match &e {
            Error::InvalidParameter { name, .. } => CliError(format!("--{name}: {e}")),
            _ => CliError(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError(format!("{}: {e}", path.display()))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError(e.to_string())),
    }
}

fn read_system(path: &Path, flag: &str) -> Result<ParallelSystem, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{flag} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{flag} {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let p = LLParams::new(a.sigma, a.lambda)?;
    let xs = if a.x.is_empty() { a.grid.build()?.points().to_vec() } else { a.x.clone() };
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let row = (
            x,
            p.pdf(x).map_err(|e| CliError::flag("--x", e))?,
            p.cdf(x)?,
            p.rhr(x)?,
            p.hazard(x)?,
        );
        rows.push(row);
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("x,pdf,cdf,rhr,hazard\n");
            for (x, f, c, r, h) in rows {
                s.push_str(&format!("{x},{f},{c},{r},{h}\n"));
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .into_iter()
                .map(|(x, pdf, cdf, rhr, hazard)| serde_json::json!({"x": x, "pdf": pdf, "cdf": cdf, "rhr": rhr, "hazard": hazard}))
                .collect();
            to_json(&v)
        }
    };
    emit(&a.out, stdout, &text)?;
    Ok(EXIT_HOLDS)
}

fn cmd_compare(a: &CompareArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let x = read_system(&a.x_system, "--x-system")?;
    let y = read_system(&a.y_system, "--y-system")?;
    let relation: Relation = a.relation.parse().map_err(|e| CliError::flag("--relation", e))?;
    let grid = a.grid.build()?;
    let report = check_order(&x, &y, relation, &grid, a.tol)?;
    emit(&a.out, stdout, &to_json(&report))?;
    Ok(if report.holds { EXIT_HOLDS } else { EXIT_FAILS })
}

fn cmd_theorem(a: &TheoremArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let id: TheoremId = a.id.parse().map_err(|e| CliError::flag("--id", e))?;
    let n = a.n.unwrap_or(if id == TheoremId::T34 { 4 } else { 3 });
    let grid = a.grid.build()?;
    let summary = randomized_theorem_sweep(id, a.trials, a.seed, n, &grid, a.tol)?;
    if let (Some(prefix), Some(fail)) = (&a.dump_failing, &summary.failing) {
        for (tag, sys) in [("x", &fail.x), ("y", &fail.y)] {
            let path = PathBuf::from(format!("{}.{tag}.json", prefix.display()));
            fs::write(&path, to_json(sys)).map_err(|e| io_err(&path, e))?;
        }
    }
    emit(&a.out, stdout, &to_json(&summary))?;
    Ok(if summary.all_passed() { EXIT_HOLDS } else { EXIT_FAILS })
}

fn cmd_counterexample(a: &CounterexampleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let id: CounterexampleId = a.id.parse().map_err(|e| CliError::flag("--id", e))?;
    let grid = a.grid.build()?;
    let run = run_counterexample(id, &grid)?;
    emit(&a.out, stdout, &run.to_csv())?;
    let line = format!("{id}: {:?}\n", run.verdict.kind);
    let sink: &mut dyn Write = if a.out.is_some() { stdout } else { stderr };
    sink.write_all(line.as_bytes()).map_err(|e| CliError(e.to_string()))?;
    Ok(if run.matches_published() { EXIT_HOLDS } else { EXIT_FAILS })
}

fn cmd_sample(a: &SampleArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let p = LLParams::new(a.sigma, a.lambda)?;
    let xs = p.sample(a.n, a.seed)?;
    let mut text = String::with_capacity(xs.len() * 20);
    for x in xs {
        text.push_str(&format!("{x}\n"));
    }
    emit(&a.out, stdout, &text)?;
    Ok(EXIT_HOLDS)
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_HOLDS;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::Compare(a) => cmd_compare(a, stdout),
        Command::Theorem(a) => cmd_theorem(a, stdout),
        Command::Counterexample(a) => cmd_counterexample(a, stdout, stderr),
        Command::Sample(a) => cmd_sample(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
