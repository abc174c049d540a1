//! Subcommand implementations.
//!
//! Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 resource guard.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cptagg_core::{
    build_matrix, config_histogram, freq, objective, per_input_disagreements, AttributeSet,
    FamilySpec, Instance, Limits, Selection,
};

use crate::format::{parse_cpt, parse_instance, serialize_cpt, serialize_instance, FormatError};
use crate::harness::{decimal, run_sweep, write_csv, Sweep};
use crate::solve::{report_to_json, solve, SolveRequest};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl From<cptagg_core::Error> for CliError {
    fn from(err: cptagg_core::Error) -> Self {
        if err.is_resource() {
            CliError::Resource(err.to_string())
        } else {
            CliError::Invalid(err.to_string())
        }
    }
}

impl From<FormatError> for CliError {
    fn from(err: FormatError) -> Self {
        match err.model_error() {
            Some(model) if model.is_resource() => CliError::Resource(err.to_string()),
            _ => CliError::Invalid(err.to_string()),
        }
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Debug, Parser)]
#[command(name = "cptagg", version, about = "Aggregate conditional preference tables under swap disagreement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance as JSON.
    Generate(GenerateArgs),
    /// Run one aggregation algorithm on an instance.
    Solve(SolveArgs),
    /// Evaluate a candidate CPT against an instance.
    Eval(EvalArgs),
    /// Print the vote matrix, vote totals and configuration histogram.
    Matrix(MatrixArgs),
    /// Sweep an instance family and write a CSV of objectives and ratios.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tkn,
    SymmetricDisjoint,
    CopyParent,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Trivial,
    Alg1,
    FixedParent,
    ExactUnion,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest attribute count for which the vote matrix is materialized.
    #[arg(long, default_value_t = 20)]
    pub max_matrix_n: usize,
    /// Largest parent set handed to the fixed-parent-set solver.
    #[arg(long, default_value_t = 24)]
    pub max_parent_bits: usize,
    /// Largest candidate pool for exhaustive search.
    #[arg(long, default_value_t = 4)]
    pub max_pool_bits: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_parent_bits: self.max_parent_bits,
            max_pool_bits: self.max_pool_bits,
            max_matrix_n: self.max_matrix_n,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Parent-set size (tkn).
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of CPTs (symmetric-disjoint, random).
    #[arg(long)]
    pub t: Option<usize>,
    /// Largest parent set (random).
    #[arg(long)]
    pub max_parents: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    #[arg(short, long)]
    pub input: PathBuf,
    /// Comma-separated parent set for fixed-parent, or the pool for exhaustive
    /// (defaults to the union of the input parent sets).
    #[arg(long)]
    pub parents: Option<String>,
    /// Where to write the JSON report.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Candidate CPT file.
    #[arg(long)]
    pub cpt: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub max_matrix_n: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub k_min: usize,
    /// Largest `k` for tkn; `n - 1` when omitted
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub t_min: Option<usize>,
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub max_parents: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of seeds per (n, t) for the random family.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(short, long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub limits: LimitArgs,
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args, stdout, stderr),
        Command::Solve(args) => cmd_solve(&args, stdout),
        Command::Eval(args) => cmd_eval(&args, stdout),
        Command::Matrix(args) => cmd_matrix(&args, stdout),
        Command::Report(args) => cmd_report(&args, stdout),
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("--{flag} is required for family {family}")))
}

pub fn family_spec(args: &GenerateArgs) -> Result<FamilySpec, CliError> {
    let n = args.n;
    Ok(match args.family {
        Family::Tkn => FamilySpec::Tkn { n, k: require(args.k, "k", "tkn")? },
        Family::SymmetricDisjoint => FamilySpec::SymmetricDisjoint {
            n,
            t: require(args.t, "t", "symmetric-disjoint")?,
            seed: args.seed,
        },
        Family::CopyParent => FamilySpec::CopyParent { n },
        Family::Random => FamilySpec::Random {
            n,
            t: require(args.t, "t", "random")?,
            max_parents: require(args.max_parents, "max-parents", "random")?,
            seed: args.seed,
        },
    })
}

fn out_writer(stdout: &mut dyn Write, text: &str) -> CliResult {
    writeln!(stdout, "{text}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(parse_instance(&bytes)?)
}

fn parse_attribute_list(text: &str, n: usize) -> Result<AttributeSet, CliError> {
    let attrs = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::Invalid(format!("bad attribute {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AttributeSet::try_from_indices(attrs, n)?)
}

pub fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    let instance = family_spec(args)?.generate()?;
    let json = serialize_instance(&instance);
    let summary = format!("t={} n={} rules={}", instance.t(), instance.n(), instance.rule_count());
    match &args.out {
        Some(path) => {
            write_file(path, &format!("{json}\n"))?;
            out_writer(stdout, &summary)
        }
        None => {
            out_writer(stdout, &json)?;
            out_writer(stderr, &summary)
        }
    }
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> CliResult {
    let instance = read_instance(&args.input)?;
    let parents = args.parents.as_deref().map(|p| parse_attribute_list(p, instance.n())).transpose()?;
    let request = match args.algorithm {
        Algorithm::Trivial => SolveRequest::Trivial,
        Algorithm::Alg1 => SolveRequest::Algorithm1,
        Algorithm::FixedParent => SolveRequest::FixedParent(parents.ok_or_else(|| {
            CliError::Invalid("--parents is required for fixed-parent".into())
        })?),
        Algorithm::ExactUnion => SolveRequest::ExactUnion,
        Algorithm::Exhaustive => {
            SolveRequest::Exhaustive(parents.unwrap_or_else(|| instance.union_of_parents()))
        }
    };
    let report = solve(&instance, request, &args.limits.limits())?;
    if let Some(path) = &args.out {
        write_file(path, &format!("{}\n", report_to_json(&report)))?;
    }
    out_writer(stdout, &format!("objective {}", report.objective))?;
    out_writer(stdout, &format!("cpt {}", serialize_cpt(&report.output)))
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> CliResult {
    let instance = read_instance(&args.input)?;
    let bytes = fs::read(&args.cpt).map_err(|e| CliError::io(&args.cpt, e))?;
    let candidate = parse_cpt(&bytes, instance.n())?;
    let value = objective(&instance, &candidate)?;
    let per_input = per_input_disagreements(&instance, &candidate)?;
    out_writer(stdout, &format!("objective {value}"))?;
    let listed: Vec<String> = per_input.iter().map(u64::to_string).collect();
    out_writer(stdout, &format!("per_input {}", listed.join(" ")))
}

/// The vote matrix as a table, one row per swap, then totals and histogram.
pub fn render_matrix(instance: &Instance, max_matrix_n: usize) -> Result<String, CliError> {
    let m = build_matrix(instance, max_matrix_n)?;
    let attrs: Vec<String> = m.attributes().iter().map(|a| a.to_string()).collect();
    let label_header = format!("o[{{{}}}]", attrs.join(","));
    let width = label_header.len().max(instance.n() - 1);
    let col_width = format!("N{}", instance.t()).len();
    let mut out = String::new();
    out.push_str(&format!("| {label_header:<width$} |"));
    for nu in 1..=instance.t() {
        out.push_str(&format!(" {:<col_width$} |", format!("N{nu}")));
    }
    out.push('\n');
    for (mu, row) in m.rows().iter().enumerate() {
        out.push_str(&format!("| {:<width$} |", m.row_label(mu)));
        for bit in row.iter() {
            out.push_str(&format!(" {:<col_width$} |", u8::from(*bit)));
        }
        out.push('\n');
    }
    let f = freq(&m, &Selection::all())?;
    out.push_str(&format!("freq 0>1 {} 1>0 {} total {}\n", f.zeros, f.ones, f.total()));
    let hist = config_histogram(&m);
    out.push_str(&format!("configurations {}\n", hist.distinct()));
    for (config, count) in hist.counts() {
        let bits: String = config.iter().map(|b| if *b { '1' } else { '0' }).collect();
        out.push_str(&format!("{bits} {count}\n"));
    }
    Ok(out)
}

pub fn cmd_matrix(args: &MatrixArgs, stdout: &mut dyn Write) -> CliResult {
    let instance = read_instance(&args.input)?;
    let text = render_matrix(&instance, args.max_matrix_n)?;
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
}

pub fn report_sweep(args: &ReportArgs) -> Sweep {
    match args.family {
        Family::Tkn => Sweep::Tkn {
            n_min: args.n_min.unwrap_or(3),
            n_max: args.n_max.unwrap_or(7),
            k_min: args.k_min,
            k_max: args.k_max.unwrap_or(usize::MAX),
        },
        Family::SymmetricDisjoint => Sweep::SymmetricDisjoint {
            t_min: args.t_min.unwrap_or(3),
            t_max: args.t_max.unwrap_or(5),
            n_min: args.n_min.unwrap_or(0),
            n_max: args.n_max.unwrap_or(8),
            seed: args.seed,
        },
        Family::CopyParent => Sweep::CopyParent {
            n_min: args.n_min.unwrap_or(4),
            n_max: args.n_max.unwrap_or(8),
        },
        Family::Random => Sweep::Random {
            n_min: args.n_min.unwrap_or(4),
            n_max: args.n_max.unwrap_or(4),
            t_min: args.t_min.unwrap_or(2),
            t_max: args.t_max.unwrap_or(5),
            max_parents: args.max_parents,
            seed: args.seed,
            seeds: args.seeds,
        },
    }
}

pub fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write) -> CliResult {
    let specs = report_sweep(args).specs();
    if specs.is_empty() {
        return Err(CliError::Invalid("the sweep ranges select no instances".into()));
    }
    let rows = run_sweep(&specs, &args.limits.limits())?;

    let dir = match args.out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    write_csv(tmp.as_file_mut(), &rows).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(&args.out).map_err(|e| CliError::io(&args.out, e.error))?;

    for row in &rows {
        let k = row.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let mut line = format!(
            "{} n={}{k} t={} opt={} trivial={} ({:.4}) alg1={} ({:.4})",
            row.family,
            row.n,
            row.t,
            row.f_opt,
            row.f_trivial,
            decimal(row.ratio_trivial),
            row.f_alg1,
            decimal(row.ratio_alg1),
        );
        if !row.formulas_hold() {
            line.push_str(" FORMULA MISMATCH");
        }
        out_writer(stdout, &line)?;
    }
    Ok(())
}
