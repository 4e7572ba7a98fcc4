use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fourier_pde::bessel::{bessel_j_zeros, bessel_jprime_zeros};
use fourier_pde::pde::problem::{solution_json, solve, ProblemFile};
use fourier_pde::{
    eval_numeric, fourier_coeff, fourier_series, parse_expr, Bindings, Error, Expr, FourierKind,
    OpaqueImpls, PiecewiseExpr, SeriesSolution, Source, Truncation,
};
use serde_json::Value;

mod grid;

use grid::{Axis, Grid};

#[derive(Parser)]
#[command(name = "fourier-pde", version, about = "Exact Fourier series and PDE solutions")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients of an expression or piecewise function.
    Fourier(SourceArgs),
    /// Fourier series, truncated at `--order` or left symbolic with `inf`.
    Series {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "inf")]
        order: Truncation,
    },
    /// Solve a problem file.
    Solve { problem: PathBuf },
    /// Evaluate an expression or solution on a grid and print CSV.
    Eval(EvalArgs),
    /// Positive zeros of J_nu, or of J_nu' with `--derivative`.
    BesselZeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        derivative: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Trig,
    Complex,
    Cos,
    Sin,
}

impl From<Kind> for FourierKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Trig => FourierKind::Trig,
            Kind::Complex => FourierKind::Complex,
            Kind::Cos => FourierKind::Cosine,
            Kind::Sin => FourierKind::Sine,
        }
    }
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long, value_enum, default_value = "trig")]
    kind: Kind,
    #[arg(long, conflicts_with = "piecewise", required_unless_present = "piecewise")]
    expr: Option<String>,
    /// Branch list as inline JSON or a path to a JSON file.
    #[arg(long)]
    piecewise: Option<String>,
    #[arg(long, default_value = "x")]
    var: String,
    #[arg(long = "L")]
    l: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, conflicts_with = "solution", required_unless_present = "solution")]
    expr: Option<String>,
    /// Solution JSON written by `solve` or `series`.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Grid axis `name=lo:hi:count`; the first axis varies slowest.
    #[arg(long = "var", required = true)]
    vars: Vec<Axis>,
    /// Comma-separated snapshot times, bound to `t` as the outermost axis.
    #[arg(long, value_delimiter = ',')]
    times: Vec<f64>,
    /// Constant binding `name=value`.
    #[arg(long = "set")]
    set: Vec<String>,
    #[arg(long, default_value_t = 25)]
    order: u64,
    /// Values below 10^-chop in magnitude print as zero.
    #[arg(long, default_value_t = 12)]
    chop: i32,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Invalid(_) => 2,
        Error::Fragment(_) => 3,
        Error::Unsupported(_) => 4,
        Error::Unbound(_) => 5,
        Error::Numeric(_) => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))
}

fn source(args: &SourceArgs) -> Result<(Source, Expr), Error> {
    let l = parse_expr(&args.l)?;
    let src = match (&args.expr, &args.piecewise) {
        (Some(e), _) => Source::Expr(parse_expr(e)?),
        (None, Some(p)) => {
            let text = if p.trim_start().starts_with('[') {
                p.clone()
            } else {
                read(Path::new(p))?
            };
            Source::Piecewise(PiecewiseExpr::from_json(&args.var, &text)?)
        }
        (None, None) => return Err(Error::Invalid("give --expr or --piecewise".into())),
    };
    Ok((src, l))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn text_lines(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .filter(|(k, _)| k.as_str() != "provenance")
            .map(|(k, v)| match v {
                Value::String(s) => format!("{} = {}", k, s),
                other => format!("{} = {}", k, other),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn series_output(s: &SeriesSolution, format: Format) -> String {
    match (s.truncation, format) {
        (Truncation::Finite(_), Format::Text) => s.closed.to_string(),
        (Truncation::Finite(_), Format::Json) => pretty(&serde_json::json!({
            "expression": s.closed.to_string(),
            "truncation": s.truncation.to_string(),
        })),
        (Truncation::Infinite, Format::Json) => pretty(&s.to_json()),
        (Truncation::Infinite, Format::Text) => s.to_string(),
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Fourier(args) => {
            let (src, l) = source(args)?;
            let c = fourier_coeff(&src, &args.var, &l, args.kind.into())?;
            if let Some(w) = c.warning() {
                eprintln!("{}", w);
            }
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&c.to_json()),
                Format::Text => text_lines(&c.to_json()),
            })
        }
        Command::Series { source: args, order } => {
            let (src, l) = source(args)?;
            let s = fourier_series(&src, &args.var, &l, *order, args.kind.into())?;
            if let Some(w) = s.warning() {
                eprintln!("{}", w);
            }
            let default = match order {
                Truncation::Finite(_) => Format::Text,
                Truncation::Infinite => Format::Json,
            };
            Ok(series_output(&s, cli.format.unwrap_or(default)))
        }
        Command::Solve { problem } => {
            let file = ProblemFile::from_json(&read(problem)?)?;
            let solution = solve(&file.to_problem()?)?;
            let v = solution_json(&file, &solution);
            if let Some(w) = v.get("warning").and_then(Value::as_str) {
                eprintln!("{}", w);
            }
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&v),
                Format::Text => text_lines(&v),
            })
        }
        Command::Eval(args) => eval(args),
        Command::BesselZeros {
            nu,
            count,
            derivative,
        } => {
            let zeros = if *derivative {
                bessel_jprime_zeros(*nu, *count)?
            } else {
                bessel_j_zeros(*nu, *count)?
            };
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string(&zeros).expect("floats serialize"),
                Format::Text => zeros
                    .iter()
                    .map(|z| format!("{:.17}", z))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
    }
}

fn eval(args: &EvalArgs) -> Result<String, Error> {
    let target = match (&args.expr, &args.solution) {
        (Some(e), _) => parse_expr(e)?,
        (None, Some(path)) => {
            let v: Value = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))?;
            SeriesSolution::from_json(&v)?.instantiate(args.order)
        }
        (None, None) => return Err(Error::Invalid("give --expr or --solution".into())),
    };
    let mut bindings = Bindings::new();
    for s in &args.set {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("binding `{}` is not name=value", s)))?;
        let value = parse_expr(value)?
            .as_scalar()
            .filter(|v| v.is_real())
            .ok_or_else(|| Error::Invalid(format!("binding `{}` is not a real constant", s)))?;
        bindings.insert(name.trim().to_string(), value.to_f64());
    }
    let mut axes = Vec::new();
    if !args.times.is_empty() {
        axes.push(Axis::points("t", args.times.clone())?);
    }
    axes.extend(args.vars.iter().cloned());
    let grid = Grid::new(axes)?;
    let opaque = OpaqueImpls::new();
    let values = grid.evaluate(|point| {
        let mut b = bindings.clone();
        for (name, x) in point {
            b.insert(name.to_string(), *x);
        }
        eval_numeric(&target, &b, &opaque)
    })?;
    grid.to_csv(&values, args.chop)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|mut out| {
        if !out.ends_with('\n') {
            out.push('\n');
        }
        match &cli.output {
            Some(path) => fs::write(path, out),
            None => io::stdout().lock().write_all(out.as_bytes()),
        }
        .map_err(|e| Error::Invalid(format!("writing output: {}", e)))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
