//! The `fuzz` command-line front end.
//!
//! Exit codes: 0 on success, 1 when verification fails, 2 for usage,
//! expression, schema and arithmetic errors.

pub mod doc;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::expr::{self, Env, ExprError};
use crate::fuzzy::FuzzyInterval;
use crate::oracle::{self, GridSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Expr(#[from] ExprError),

    #[error("{0}")]
    Math(#[from] crate::Error),

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "fuzz", version, about = "Arithmetic on fuzzy intervals")]
pub struct Cli {
    /// Record the generation time in emitted documents.
    #[arg(long, global = true)]
    pub stamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Imports {
    /// Make a JSON document available to `load("NAME")`; repeatable.
    #[arg(long = "import", value_name = "NAME=PATH")]
    pub imports: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print the result.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
        /// Number of membership samples for csv/svg output.
        #[arg(long, default_value_t = 513)]
        samples: usize,
        #[command(flatten)]
        imports: Imports,
    },
    /// Print the α-cut of an expression as `[lo, hi]`.
    Cut {
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        imports: Imports,
    },
    /// Check a binary operation against the extension principle.
    Verify {
        expr: String,
        /// Samples per operand and number of output bins.
        #[arg(long, default_value_t = oracle::DEFAULT_GRID)]
        grid: usize,
        /// Comma-separated comparison levels.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        levels: Vec<f64>,
        /// Allowed Hausdorff distance in output bins.
        #[arg(long, default_value_t = oracle::DEFAULT_TOL_BINS)]
        tol_bins: f64,
        #[command(flatten)]
        imports: Imports,
    },
    /// Validate a JSON document and summarize it.
    Import { file: PathBuf },
    /// Write an expression's value as a JSON document.
    Export {
        expr: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        description: Option<String>,
        #[command(flatten)]
        imports: Imports,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn stamp(enabled: bool) -> Option<u64> {
    enabled.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
}

fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Loads a document from disk and validates it.
pub fn import_file(path: &std::path::Path) -> Result<(FuzzyInterval, doc::FuzzyIntervalDoc), CliError> {
    let d = doc::parse_doc(&read_file(path)?)?;
    Ok((doc::from_doc(&d)?, d))
}

fn environment(imports: &Imports) -> Result<Env, CliError> {
    let mut env = Env::new();
    for spec in &imports.imports {
        let (name, path) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--import expects NAME=PATH, got '{spec}'")))?;
        let (f, _) = import_file(std::path::Path::new(path))?;
        env.insert(name.to_string(), f);
    }
    Ok(env)
}

fn evaluate(src: &str, imports: &Imports) -> Result<FuzzyInterval, CliError> {
    let env = environment(imports)?;
    Ok(expr::evaluate(&expr::parse(src)?, &env)?)
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), message: e.to_string() }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let stamp = stamp(cli.stamp);
    match &cli.command {
        Command::Eval { expr, out: format, samples, imports } => {
            if *samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let f = evaluate(expr, imports)?;
            let text = match format {
                OutFormat::Json => {
                    let meta = stamp.map(|t| doc::Metadata { generated_at: Some(t), ..Default::default() });
                    doc::to_json(&doc::to_doc(&f, meta)) + "\n"
                }
                OutFormat::Csv => render::csv(&render::samples(&f, *samples), stamp),
                OutFormat::Svg => render::svg(&render::samples(&f, *samples), expr, stamp),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Cut { expr, alpha, imports } => {
            let f = evaluate(expr, imports)?;
            let cut = f.alpha_cut(*alpha)?;
            writeln!(out, "[{}, {}]", render::format_g(cut.lo, 12), render::format_g(cut.hi, 12)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { expr, grid, levels, tol_bins, imports } => {
            let env = environment(imports)?;
            let parsed = expr::parse(expr)?;
            let (op, l, r) = parsed
                .top_binary()
                .ok_or_else(|| CliError::Usage("verify needs a binary operation at the top level".into()))?;
            let (f, g) = (expr::evaluate(l, &env)?, expr::evaluate(r, &env)?);
            let grid = GridSpec::new(*grid)?;
            let result = op.apply(&f, &g).map_err(|e| ExprError::Eval { span: parsed.span, source: e })?;
            let sampled = oracle::extend(op, &f, &g, grid)?;
            let report = oracle::compare(&result, &sampled, levels, *tol_bins)?;
            let support = result.support();
            writeln!(out, "expression: {parsed}").map_err(io)?;
            writeln!(
                out,
                "support: [{}, {}] (oracle image [{}, {}])",
                render::format_g(support.lo, 12),
                render::format_g(support.hi, 12),
                render::format_g(sampled.range.lo, 12),
                render::format_g(sampled.range.hi, 12)
            )
            .map_err(io)?;
            writeln!(out, "grid: {} per axis", grid.n_per_axis).map_err(io)?;
            writeln!(out, "{report}").map_err(io)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Import { file } => {
            let (f, d) = import_file(file)?;
            let name = d.metadata.as_ref().and_then(|m| m.name.clone()).unwrap_or_else(|| "(unnamed)".into());
            let (s, c) = (f.support(), f.core());
            writeln!(out, "name: {name}").map_err(io)?;
            writeln!(out, "support: [{}, {}]", render::format_g(s.lo, 12), render::format_g(s.hi, 12)).map_err(io)?;
            writeln!(out, "core: [{}, {}]", render::format_g(c.lo, 12), render::format_g(c.hi, 12)).map_err(io)?;
            writeln!(out, "segments: a_d {}, a_u {}", f.a_d().pieces().len(), f.a_u().pieces().len()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Export { expr, file, name, description, imports } => {
            let f = evaluate(expr, imports)?;
            let meta = (name.is_some() || description.is_some() || stamp.is_some()).then(|| doc::Metadata {
                name: name.clone(),
                description: description.clone(),
                generated_at: stamp,
            });
            let text = doc::to_json(&doc::to_doc(&f, meta)) + "\n";
            match file {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
    }
}
