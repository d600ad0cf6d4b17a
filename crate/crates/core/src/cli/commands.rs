//! Subcommands of the `arithfn` binary.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::eval::{check_backend, eval_expr, load_function, EvalContext, EvalError};
use super::parse::{parse_expr, Expr, ParseError};
use crate::catalogue::verify_identities;
use crate::dirichlet::{write_csv, write_json, ArithFn};
use crate::error::Error;
use crate::numerics::{Backend, Coeff, ComplexFloat, ExactRational, DEFAULT_EPSILON};
use crate::sieve::SpfSieve;
use crate::structure::{
    bell_decompose_mult, is_additive, is_completely_additive, is_completely_multiplicative,
    is_multiplicative, mobius_additivity_test, Verdict,
};
use crate::transcend::{dexp, dlog, normalize_unit, psi, psi_inv};

/// Largest bound accepted by any subcommand.
pub const MAX_CLI_BOUND: usize = 10_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "arithfn",
    version,
    about = "Arithmetical functions truncated at a bound N",
    after_help = "Expressions combine catalogue functions (I, u, mu, phi, Lambda, lambda_liouville, \
d, sigma(c), N, nu, Omega) and file(\"path\") with `*` (Dirichlet product), `+` (pointwise sum), \
`r . f` (scalar multiple), inv, log, exp, psi, psiinv, deriv and pow(f, k).\n\
Bounds are capped at 10000000.\n\
Exit status: 0 success, 1 check or identity failed, 2 usage, parse or domain error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Numeric {
    /// Coefficient backend; `complex` is required by Lambda, deriv and non-integer sigma
    #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
    pub backend: BackendArg,
    /// Magnitude below which a float value counts as zero (inv, support)
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Complex,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Rational => Backend::Rational,
            BackendArg::Complex => Backend::Complex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Multiplicative,
    CompletelyMultiplicative,
    Additive,
    CompletelyAdditive,
    AdditiveMobius,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Psi,
    Psiinv,
    Log,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Identities,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the value of EXPR at n
    Eval {
        expr: String,
        #[arg(value_name = "n")]
        index: usize,
        /// Bound N (default 1000, raised to n when n is larger)
        #[arg(long = "n", value_name = "N")]
        bound: Option<usize>,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Tabulate EXPR for n = 1..N
    Table {
        expr: String,
        #[arg(long = "n", value_name = "N", default_value_t = 1000)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Test a structural property; prints the least witness on failure
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        expr: String,
        #[arg(long = "n", value_name = "N", default_value_t = 1000)]
        bound: usize,
        /// Relative tolerance for float comparisons
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Apply psi, psiinv, log or exp and write the result as CSV (or JSON for *.json)
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        expr: String,
        #[arg(long = "n", value_name = "N", default_value_t = 1000)]
        bound: usize,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Divide by a(1) before psi or log
        #[arg(long)]
        normalize_unit: bool,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Print the Bell series of a multiplicative EXPR at a prime, as JSON
    Bell {
        expr: String,
        #[arg(long)]
        prime: usize,
        #[arg(long = "n", value_name = "N", default_value_t = 1000)]
        bound: usize,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// Run the catalogue identity suite
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long = "n", value_name = "N", default_value_t = 10_000)]
        bound: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Validate a CSV or JSON function file for use as file("...")
    Import {
        file: PathBuf,
        #[command(flatten)]
        numeric: Numeric,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(ParseError, String),
    Eval(EvalError),
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e.to_string()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(e, source) => write!(f, "{}", e.render(source)),
            Failure::Eval(e) => write!(f, "{e}"),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn check_bound(bound: usize) -> std::result::Result<usize, Failure> {
    if bound == 0 || bound > MAX_CLI_BOUND {
        return Err(Failure::Usage(format!(
            "bound N must lie in 1..={MAX_CLI_BOUND}, got {bound}"
        )));
    }
    Ok(bound)
}

fn parse(text: &str) -> std::result::Result<Expr, Failure> {
    parse_expr(text).map_err(|e| Failure::Parse(e, text.to_string()))
}

fn context(bound: usize, numeric: &Numeric) -> std::result::Result<EvalContext, Failure> {
    if !(numeric.eps.is_finite() && numeric.eps >= 0.0) {
        return Err(Failure::Usage(format!("invalid --eps {}", numeric.eps)));
    }
    let mut ctx = EvalContext::new(check_bound(bound)?)?;
    ctx.eps = numeric.eps;
    Ok(ctx)
}

/// Parses, checks the backend and builds the context for an expression command.
fn prepare(
    text: &str,
    bound: usize,
    numeric: &Numeric,
) -> std::result::Result<(Expr, EvalContext), Failure> {
    let expr = parse(text)?;
    check_backend(&expr, numeric.backend.into())?;
    Ok((expr, context(bound, numeric)?))
}

fn verdict_line<T>(out: &mut dyn Write, kind: CheckKind, v: &Verdict<T>) -> Outcome {
    match v {
        Verdict::Holds(_) => {
            writeln!(out, "{kind}: true")?;
            Ok(EXIT_OK)
        }
        Verdict::Fails(w) => {
            writeln!(out, "{kind}: false (witness {w})")?;
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn write_table<C: Coeff>(out: &mut dyn Write, f: &ArithFn<C>, format: Format) -> Outcome {
    match format {
        Format::Text => {
            let width = f.bound().to_string().len();
            for (n, v) in f.iter() {
                writeln!(out, "{n:>width$}  {v}")?;
            }
        }
        Format::Csv => write_csv(f, &mut *out)?,
        Format::Json => {
            write_json(f, &mut *out)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_function_file<C: Coeff>(path: &Path, f: &ArithFn<C>) -> std::result::Result<(), Failure> {
    let mut w = BufWriter::new(File::create(path)?);
    if path.extension().is_some_and(|e| e == "json") {
        write_json(f, &mut w)?;
    } else {
        write_csv(f, &mut w)?;
    }
    w.flush()?;
    Ok(())
}

fn execute<C: Coeff>(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Eval {
            expr,
            index,
            bound,
            numeric,
        } => {
            let bound = bound.unwrap_or((*index).max(1000));
            if *index == 0 || *index > bound {
                return Err(Failure::Usage(format!("n must lie in 1..={bound}, got {index}")));
            }
            let (e, ctx) = prepare(expr, bound, numeric)?;
            let f = eval_expr::<C>(&e, &ctx)?;
            writeln!(out, "{}", f[*index])?;
            Ok(EXIT_OK)
        }
        Command::Table {
            expr,
            bound,
            format,
            numeric,
        } => {
            let (e, ctx) = prepare(expr, *bound, numeric)?;
            write_table(out, &eval_expr::<C>(&e, &ctx)?, *format)
        }
        Command::Check {
            kind,
            expr,
            bound,
            tol,
            numeric,
        } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::Usage(format!("invalid --tol {tol}")));
            }
            let (e, ctx) = prepare(expr, *bound, numeric)?;
            let f = eval_expr::<C>(&e, &ctx)?;
            match kind {
                CheckKind::Multiplicative => verdict_line(out, *kind, &is_multiplicative(&f, *tol)),
                CheckKind::Additive => verdict_line(out, *kind, &is_additive(&f, *tol)),
                CheckKind::CompletelyMultiplicative => {
                    let v = is_completely_multiplicative(&f, &ctx.sieve, *tol)?;
                    verdict_line(out, *kind, &v)
                }
                CheckKind::CompletelyAdditive => {
                    let v = is_completely_additive(&f, &ctx.sieve, *tol)?;
                    verdict_line(out, *kind, &v)
                }
                CheckKind::AdditiveMobius => {
                    let v = mobius_additivity_test(&f, &ctx.sieve, *tol)?;
                    verdict_line(out, *kind, &v)
                }
            }
        }
        Command::Transform {
            kind,
            expr,
            bound,
            out: path,
            normalize_unit: normalize,
            numeric,
        } => {
            let (e, ctx) = prepare(expr, *bound, numeric)?;
            let mut f = eval_expr::<C>(&e, &ctx)?;
            if *normalize {
                if matches!(kind, TransformKind::Psi | TransformKind::Log) {
                    f = normalize_unit(&f)?;
                } else {
                    writeln!(err, "warning: --normalize-unit only applies to psi and log")?;
                }
            }
            let g = match kind {
                TransformKind::Psi => psi(&f),
                TransformKind::Psiinv => psi_inv(&f),
                TransformKind::Log => dlog(&f),
                TransformKind::Exp => dexp(&f),
            }?;
            match path {
                Some(path) => {
                    write_function_file(path, &g)?;
                    writeln!(err, "wrote {} values to {}", g.bound(), path.display())?;
                }
                None => write_csv(&g, &mut *out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Bell {
            expr,
            prime,
            bound,
            numeric,
        } => {
            let (e, ctx) = prepare(expr, *bound, numeric)?;
            if !ctx.sieve.is_prime(*prime) {
                return Err(Failure::Usage(format!(
                    "--prime must be a prime not exceeding {bound}, got {prime}"
                )));
            }
            let f = eval_expr::<C>(&e, &ctx)?;
            let decomposition = bell_decompose_mult(&f, &ctx.sieve)?;
            let series = decomposition
                .series_for(*prime)
                .ok_or_else(|| Error::Invariant(format!("no Bell series at {prime}")))?;
            writeln!(out, "{}", series.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Verify { target, bound, tol } => {
            let VerifyTarget::Identities = target;
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::Usage(format!("invalid --tol {tol}")));
            }
            let sieve = SpfSieve::new(check_bound(*bound)?)?;
            let report = verify_identities(&sieve, *tol)?;
            write!(out, "{report}")?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Import { file, .. } => {
            let f = load_function::<C>(file)?;
            check_bound(f.bound())?;
            writeln!(out, "bound: {}", f.bound())?;
            writeln!(out, "backend: {}", C::BACKEND.name())?;
            writeln!(out, "usage: file({:?})", file.display().to_string())?;
            Ok(EXIT_OK)
        }
    }
}

fn backend_of(command: &Command) -> BackendArg {
    match command {
        Command::Eval { numeric, .. }
        | Command::Table { numeric, .. }
        | Command::Check { numeric, .. }
        | Command::Transform { numeric, .. }
        | Command::Bell { numeric, .. }
        | Command::Import { numeric, .. } => numeric.backend,
        Command::Verify { .. } => BackendArg::Rational,
    }
}

/// Runs one command line, writing data to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match backend_of(&cli.command) {
        BackendArg::Rational => execute::<ExactRational>(&cli.command, out, err),
        BackendArg::Complex => execute::<ComplexFloat>(&cli.command, out, err),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            EXIT_ERROR
        }
    }
}

/// Runs the process command line against the standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run_with(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
