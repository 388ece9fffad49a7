//! `chiso`: classify, compare and build isometries of complex hyperbolic space
//! from JSON matrix documents.

mod commands;
mod document;
mod error;
mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chiso::Tolerances;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use commands::{Context, HeisParams};
use document::{FormName, MatrixDocument};
use error::{exit, CliError};
use report::Report;

#[derive(Parser)]
#[command(name = "chiso", version, about = "Isometries of complex hyperbolic space", after_help = EXIT_CODES)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    /// Dimension n: checked against input documents, required by generators.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Convert inputs to this form before working; generators emit in it.
    #[arg(long, global = true, value_enum)]
    form: Option<FormName>,
    /// Write output to this path instead of stdout (`-` means stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// JSON Lines input: one document per line, or a two-element array for
    /// `commute` and `zclass`. Output is one JSON line per input line.
    #[arg(long, global = true)]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

const EXIT_CODES: &str = "Exit codes:
  0  success
  2  malformed input, bad arguments, I/O failure, dimension or form mismatch
  3  a matrix is not in the group at the membership tolerance
  4  ambiguous at the given tolerances (clustering, rank or convergence)
  5  the theorem-based answer disagrees with its numerical oracle";

#[derive(Args)]
struct TolArgs {
    /// Absolute bound on ‖g*Jg − J‖_max.
    #[arg(long, global = true)]
    tol_membership: Option<f64>,
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    /// Eigenvalue clustering radius.
    #[arg(long, global = true)]
    tol_cluster: Option<f64>,
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Threshold on the relative commutator for commutation verdicts.
    #[arg(long, global = true)]
    tol_verdict: Option<f64>,
    #[arg(long, global = true)]
    tol_nullspace: Option<f64>,
    #[arg(long, global = true)]
    tol_signature: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances, CliError> {
        let mut t = Tolerances::DEFAULT;
        let fields = [
            (self.tol_membership, &mut t.membership, "membership"),
            (self.tol_residual, &mut t.residual, "residual"),
            (self.tol_cluster, &mut t.cluster, "cluster"),
            (self.tol_rank, &mut t.rank, "rank"),
            (self.tol_verdict, &mut t.verdict, "verdict"),
            (self.tol_nullspace, &mut t.nullspace, "nullspace"),
            (self.tol_signature, &mut t.signature, "signature"),
        ];
        for (given, slot, name) in fields {
            if let Some(v) = given {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Argument(format!("--tol-{name} must be positive and finite")));
                }
                *slot = v;
            }
        }
        Ok(t)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify an element and list its eigenvalue clusters and fixed boundary points.
    Classify { input: Option<PathBuf> },
    /// Decide whether A and B commute, with the numerical commutator as a cross-check.
    Commute { a: Option<PathBuf>, b: Option<PathBuf> },
    /// Centralizer structure and dimension, cross-checked against the commutant.
    Centralizer { input: Option<PathBuf> },
    /// Whether A and B have conjugate centralizers.
    Zclass { a: Option<PathBuf>, b: Option<PathBuf> },
    /// A seeded random group element.
    Random {
        #[arg(long)]
        seed: u64,
        /// Size of the Lie algebra element that is exponentiated.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Assemble D_r·R_U·T_(τ,t) in the second form.
    Heisenberg {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Unitary (n−1)×(n−1) matrix as JSON rows of [re, im] pairs; identity by default.
        #[arg(long)]
        rotation: Option<String>,
        /// Horizontal part as a JSON array of n−1 [re, im] pairs; zero by default.
        #[arg(long)]
        tau: Option<String>,
        /// Vertical part.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
    },
    /// Move a document to the other form.
    Cayley { input: Option<PathBuf> },
    /// Semisimple and unipotent parts.
    Jordan { input: Option<PathBuf> },
    /// Split an element fixing ∞ into scalar, dilation, rotation and translation.
    Decompose { input: Option<PathBuf> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Commute { .. } => "commute",
            Command::Centralizer { .. } => "centralizer",
            Command::Zclass { .. } => "zclass",
            Command::Random { .. } => "random",
            Command::Heisenberg { .. } => "heisenberg",
            Command::Cayley { .. } => "cayley",
            Command::Jordan { .. } => "jordan",
            Command::Decompose { .. } => "decompose",
        }
    }

    fn takes_pair(&self) -> bool {
        matches!(self, Command::Commute { .. } | Command::Zclass { .. })
    }

    /// Positional input paths, for commands that read documents.
    fn inputs(&self) -> Option<Vec<&Option<PathBuf>>> {
        match self {
            Command::Classify { input }
            | Command::Centralizer { input }
            | Command::Cayley { input }
            | Command::Jordan { input }
            | Command::Decompose { input } => Some(vec![input]),
            Command::Commute { a, b } | Command::Zclass { a, b } => Some(vec![a, b]),
            Command::Random { .. } | Command::Heisenberg { .. } => None,
        }
    }

    fn run(&self, ctx: &Context, docs: &[MatrixDocument], index: Option<usize>) -> Result<Report, CliError> {
        match (self, docs) {
            (Command::Classify { .. }, [d]) => commands::classify(ctx, d, index),
            (Command::Centralizer { .. }, [d]) => commands::centralizer(ctx, d, index),
            (Command::Cayley { .. }, [d]) => commands::cayley(ctx, d, index),
            (Command::Jordan { .. }, [d]) => commands::jordan(ctx, d, index),
            (Command::Decompose { .. }, [d]) => commands::decompose(ctx, d, index),
            (Command::Commute { .. }, [a, b]) => commands::commute(ctx, a, b, index),
            (Command::Zclass { .. }, [a, b]) => commands::zclass(ctx, a, b, index),
            (Command::Random { seed, scale }, []) => commands::random(ctx, *seed, *scale),
            (Command::Heisenberg { r, rotation, tau, t }, []) => {
                let params = HeisParams {
                    r: *r,
                    rotation: rotation.as_deref().map(|s| json_arg(s, "--rotation")).transpose()?,
                    tau: tau.as_deref().map(|s| json_arg(s, "--tau")).transpose()?,
                    t: *t,
                };
                commands::heisenberg(ctx, &params)
            }
            _ => Err(CliError::Argument(format!("{} got {} input documents", self.name(), docs.len()))),
        }
    }
}

fn json_arg<T: for<'de> Deserialize<'de>>(text: &str, flag: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{flag}: {e}")))
}

fn read_source(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(text)
}

/// Reads the positional documents; a missing path means stdin, allowed once.
fn read_documents(paths: &[&Option<PathBuf>]) -> Result<Vec<MatrixDocument>, CliError> {
    let stdin = PathBuf::from("-");
    let resolved: Vec<&Path> = paths.iter().map(|p| p.as_deref().unwrap_or(&stdin)).collect();
    if resolved.iter().filter(|p| **p == Path::new("-")).count() > 1 {
        return Err(CliError::Argument("only one input can come from stdin".into()));
    }
    resolved.into_iter().map(|p| MatrixDocument::parse(&read_source(p)?)).collect()
}

fn batch_documents(line: &str, pair: bool) -> Result<Vec<MatrixDocument>, CliError> {
    let v: Value = serde_json::from_str(line).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    match (pair, v) {
        (true, Value::Array(items)) if items.len() == 2 => items.into_iter().map(MatrixDocument::from_value).collect(),
        (true, _) => Err(CliError::Parse("expected a two-element array of documents".into())),
        (false, v) => Ok(vec![MatrixDocument::from_value(v)?]),
    }
}

/// One output line of a batch run.
#[derive(Serialize)]
struct BatchEntry {
    index: usize,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn run_batch(cli: &Cli, ctx: &Context, path: &Path) -> Result<(String, u8), CliError> {
    if cli.command.inputs().is_none() {
        return Err(CliError::Argument(format!(
            "{} does not read documents and cannot run in batch mode",
            cli.command.name()
        )));
    }
    let text = read_source(path)?;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    let pair = cli.command.takes_pair();
    let entries: Vec<BatchEntry> = lines
        .par_iter()
        .map(|&(index, line)| {
            match batch_documents(line, pair).and_then(|docs| cli.command.run(ctx, &docs, Some(index))) {
                Ok(report) => BatchEntry { index, exit_code: report.exit_code(), report: Some(report), error: None },
                Err(e) => BatchEntry { index, exit_code: e.exit_code(), report: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let code = entries.iter().map(|e| e.exit_code).max().unwrap_or(exit::OK);
    let mut out = String::new();
    for e in &entries {
        out.push_str(&serde_json::to_string(e).expect("entries serialize"));
        out.push('\n');
    }
    Ok((out, code))
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    let ctx = Context {
        tol: cli.tol.resolve()?,
        n: cli.n,
        form: cli.form,
        name: cli.command.name(),
        args: std::env::args().skip(1).collect(),
    };
    if let Some(path) = &cli.batch {
        return run_batch(cli, &ctx, path);
    }
    let docs = match cli.command.inputs() {
        Some(paths) => read_documents(&paths)?,
        None => Vec::new(),
    };
    let report = cli.command.run(&ctx, &docs, None)?;
    let mut text = serde_json::to_string(&report).expect("reports serialize");
    text.push('\n');
    Ok((text, report.exit_code()))
}

fn write_output(target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source })
        }
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|(text, code)| write_output(cli.output.as_deref(), &text).map(|_| code));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("chiso: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
