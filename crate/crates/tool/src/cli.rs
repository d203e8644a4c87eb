//! Command-line front end.
//!
//! Exit codes: 0 when the command ran (the verdict is in the output),
//! 2 for input errors, 3 when the assignment budget is exceeded, 1 for
//! internal failures.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbs_core::families::FamilySpec;
use mbs_core::neighborhood::enumerate_dual_graphs;
use mbs_core::obstruction::{check_budget, DEFAULT_BUDGET};
use mbs_core::{EvalError, EvalOptions, MultibranchedSurface};

use crate::{dot, format, parallel, report};

#[derive(Debug, Parser)]
#[command(name = "mbs", version, about = "Embedding obstructions for multibranched surfaces in the 3-sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide NOT_EMBEDDABLE or INCONCLUSIVE for a surface.
    Check(CheckArgs),
    /// Write a family example as `.mbs` text.
    Gen(GenArgs),
    /// Write one DOT file per distinct abstract dual graph.
    Dot(DotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
    Dot,
}

#[derive(Debug, Args)]
pub struct EvalFlags {
    /// Skip dual graphs that are not connected.
    #[arg(long)]
    pub assume_connected_duals: bool,
    /// Check only the first spanning forest of each dual graph.
    #[arg(long)]
    pub fast_single_tree: bool,
    /// Maximum number of cyclic assignments to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, short, default_value_t = 0)]
    pub jobs: usize,
}

impl EvalFlags {
    pub fn options(&self) -> EvalOptions {
        EvalOptions {
            assume_connected_duals: self.assume_connected_duals,
            single_forest: self.fast_single_tree,
            budget: u128::from(self.budget),
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Surface in `.mbs` format.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Family example instead of a file: rp2, x1:D,.., x2:N or x3:K,..
    #[arg(long, allow_hyphen_values = true)]
    pub family: Option<String>,
    #[command(flatten)]
    pub eval: EvalFlags,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Report file (a directory for `--format dot`); stdout by default.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Rp2,
    X1,
    X2,
    X3,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: FamilyKind,
    /// Comma-separated degrees (x1), n (x2) or multiplicities (x3).
    #[arg(allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    pub input: PathBuf,
    pub outdir: PathBuf,
    /// Maximum number of cyclic assignments to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(EvalError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Input(format!("not an integer: `{t}`"))))
        .collect()
}

pub fn family_spec(kind: FamilyKind, params: Option<&str>) -> Result<FamilySpec, CliError> {
    fn need(p: Option<&str>) -> Result<&str, CliError> {
        p.ok_or_else(|| CliError::Input("missing family parameters".into()))
    }
    Ok(match kind {
        FamilyKind::Rp2 => {
            if params.is_some() {
                return Err(CliError::Input("rp2 takes no parameters".into()));
            }
            FamilySpec::Rp2
        }
        FamilyKind::X1 => FamilySpec::X1(parse_list(need(params)?)?),
        FamilyKind::X2 => {
            let p = need(params)?;
            FamilySpec::X2(p.trim().parse().map_err(|_| CliError::Input(format!("not a size: `{p}`")))?)
        }
        FamilyKind::X3 => FamilySpec::X3(parse_list(need(params)?)?),
    })
}

/// `rp2`, `x1:1,-1`, `x2:4`, `x3:2,2`.
pub fn parse_family(s: &str) -> Result<FamilySpec, CliError> {
    let (name, params) = match s.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (s, None),
    };
    let kind = FamilyKind::from_str(name, true).map_err(|_| CliError::Input(format!("unknown family `{name}`")))?;
    family_spec(kind, params)
}

pub fn read_surface(path: &Path) -> Result<MultibranchedSurface, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Internal(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let x = match (&args.input, &args.family) {
        (Some(p), None) => read_surface(p)?,
        (None, Some(f)) => parse_family(f)?.build().map_err(input_err)?,
        _ => return Err(CliError::Input("give exactly one of an input file or --family".into())),
    };
    let verdict = parallel::evaluate(&x, &args.eval.options(), args.eval.jobs)?;
    match args.format {
        OutputFormat::Text => emit(args.output.as_deref(), out, &report::text(&x, &verdict)),
        OutputFormat::Structured => emit(args.output.as_deref(), out, &report::structured(&x, &verdict)),
        OutputFormat::Dot => {
            let graphs = verdict.reports.iter().map(|r| &r.graph);
            match &args.output {
                Some(dir) => dot::write_all(&x, graphs, dir)
                    .map(|_| ())
                    .map_err(|e| CliError::Internal(format!("{}: {e}", dir.display()))),
                None => {
                    let all: String = graphs.map(|g| dot::render(&x, g)).collect();
                    emit(None, out, &all)
                }
            }
        }
    }
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = family_spec(args.family, args.params.as_deref())?;
    let x = spec.build().map_err(input_err)?;
    if !x.is_connected() {
        return Err(CliError::Input(format!(
            "{} is disconnected; only connected surfaces have a file form",
            spec.name()
        )));
    }
    emit(args.output.as_deref(), out, &format::serialize(&x))
}

pub fn cmd_dot(args: &DotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let x = read_surface(&args.input)?;
    let options = EvalOptions {
        budget: u128::from(args.budget),
        ..Default::default()
    };
    check_budget(&x, &options)?;
    let classes = enumerate_dual_graphs(&x).map_err(|e| CliError::Internal(e.to_string()))?;
    let written = dot::write_all(&x, classes.iter().map(|c| &c.graph), &args.outdir)
        .map_err(|e| CliError::Internal(format!("{}: {e}", args.outdir.display())))?;
    for p in written {
        writeln!(out, "{}", p.display()).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Dot(a) => cmd_dot(a, out),
    }
}
