//! `bkn`: classify labelled graphs, check certificates, run the census.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use bkn_core::census::{run_census, CensusBounds, CensusOptions};
use bkn_core::decider::{classify_all, classify_some, ClassifyOptions, PropertyId};
use bkn_core::oracle::{check_certificate, BknSolution, NumericBudget};
use bkn_core::rational::parse_rational;
use bkn_core::{parse_graph, LabeledGraph};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bkn", version, about = "Decide solvability properties of charged, indexed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph file against all seven properties.
    Classify(ClassifyArgs),
    /// Check a certificate file against a graph file.
    Check(CheckArgs),
    /// Cross-validate the deciders on every small graph.
    Census(CensusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Graph file (JSON).
    path: PathBuf,
    /// Only decide this property (Im, HI, F, E, VF, VE, NPC).
    #[arg(long)]
    property: Option<PropertyId>,
    /// Case limit for the E and VE enumerations.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Grid bound for the numeric certificate search; 0 disables it.
    #[arg(long, default_value_t = 6)]
    grid: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Report loop caveats on standard error instead of in the verdicts.
    #[arg(long)]
    flag_loops: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph file (JSON).
    graph: PathBuf,
    /// Certificate file (JSON).
    certificate: PathBuf,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    max_vertices: usize,
    /// Comma-separated charges; an empty list gives an empty census.
    #[arg(long, default_value = "-1,-1/2,0,1/2,1", allow_hyphen_values = true)]
    charges: String,
    /// Comma-separated nonzero edge indices.
    #[arg(long, default_value = "1,2", allow_hyphen_values = true)]
    indices: String,
    #[arg(long, default_value_t = 4)]
    max_edges: usize,
    /// Include loops.
    #[arg(long)]
    loops: bool,
    /// Case limit for the E and VE enumerations and the exact search.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Grid bound for the numeric certificate search; 0 disables it.
    #[arg(long, default_value_t = 2)]
    grid: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: CensusFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Census(args) => cmd_census(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("{}", path.display()))
}

fn numeric_budget(grid: u32) -> Option<NumericBudget> {
    (grid > 0).then(|| NumericBudget {
        grid,
        ..NumericBudget::default()
    })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8> {
    let Format::Json = args.format;
    let g = load_graph(&args.path)?;
    if g.vertex_count() == 0 {
        eprintln!("warning: graph has no vertices");
    } else if g.vertex_count() == 1 && g.edge_count() == 0 {
        eprintln!("warning: graph is a single vertex without edges");
    }
    let options = ClassifyOptions {
        exhaustive_limit: args.budget,
        numeric: numeric_budget(args.grid),
    };
    let mut c = match args.property {
        Some(p) => classify_some(&g, &[p], &options),
        None => classify_all(&g, &options),
    };
    if args.flag_loops {
        if let Some(caveat) = c.caveat.take() {
            eprintln!("warning: {caveat}");
        }
        for outcome in c.outcomes.values_mut() {
            if let bkn_core::decider::Outcome::Decided(v) = outcome {
                v.caveat = None;
            }
        }
    }
    print!("{}", output::classify_json(&g, &c));
    Ok(if c.is_fully_decided() { 0 } else { 3 })
}

fn cmd_check(args: &CheckArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let text = fs::read_to_string(&args.certificate)
        .with_context(|| format!("cannot read {}", args.certificate.display()))?;
    let cert = BknSolution::parse(&g, &text).with_context(|| format!("{}", args.certificate.display()))?;
    let report = check_certificate(&g, &cert)?;
    print!("{}", output::check_json(&g, &cert, &report));
    Ok(if report.valid { 0 } else { 1 })
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(item)
        .collect()
}

fn cmd_census(args: &CensusArgs) -> Result<u8> {
    let charges = parse_list(&args.charges, |s| {
        parse_rational(s).with_context(|| format!("bad charge {s:?}"))
    })?;
    let indices = parse_list(&args.indices, |s| {
        let b: i64 = s.parse().with_context(|| format!("bad index {s:?}"))?;
        if b == 0 {
            return Err(anyhow!("edge index must be nonzero"));
        }
        Ok(b)
    })?;
    let options = CensusOptions {
        bounds: CensusBounds {
            max_vertices: args.max_vertices,
            charges,
            indices,
            max_edges: args.max_edges,
            loops: args.loops,
        },
        exhaustive_limit: args.budget,
        exact: true,
        numeric: numeric_budget(args.grid).map(|b| NumericBudget {
            max_programs: 10_000,
            ..b
        }),
    };
    let report = run_census(&options)?;
    match args.format {
        CensusFormat::Text => print!("{}", output::census_text(&options, &report)),
        CensusFormat::Json => print!("{}", output::census_json(&options, &report)),
    }
    Ok(if report.passed() { 0 } else { 1 })
}
