//! `plethys`: expand series, run verification suites, enumerate graph censuses.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 budget exceeded.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use plethys::exec::Strategy;
use plethys::graph::{enumerate_decorated_with, write_census_jsonl, Budget, Family, GraphError};
use plethys::json::{sym_to_json, wreath_to_json};
use plethys::series::{
    a_series, ass_series_closed, b1_series, cyclic_necklace_series, necklace_series,
    tree_fixed_point, ModuleSpec, SeriesError,
};
use plethys::verify::{run_suite, Suite, VerifyConfig, VerifyError};
use plethys::wreath::dih_series_closed;

#[derive(Parser, Debug)]
#[command(
    name = "plethys",
    version,
    about = "Exact symmetric-function series and graph censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation degree (each verify suite has its own default).
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Module spec as JSON; defaults to the standard test spec.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    budget_half_edges: Option<usize>,
    #[arg(long, global = true)]
    budget_classes: Option<usize>,
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a truncated series.
    Expand {
        #[arg(value_enum)]
        what: Expansion,
    },
    /// Run a verification suite, or all of them.
    Verify { suite: String },
    /// Stream a census of decorated graphs as JSON lines.
    Enumerate {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expansion {
    Ass,
    CyclicNecklaces,
    Necklaces,
    Dih,
    Tree,
    B1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

const DEFAULT_DEGREE: usize = 6;

enum Failure {
    Input(String),
    Budget(String),
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded(why) => Failure::Budget(why),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Budget(why) => Failure::Budget(why),
            VerifyError::Input(why) => Failure::Input(why),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {s:?}; expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("PLETHYS_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                // only fails if a pool already exists, which cannot happen this early
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: PLETHYS_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(why)) => {
            eprintln!("budget exceeded: {why}");
            ExitCode::from(3)
        }
    }
}

fn load_spec(cli: &Cli) -> Result<ModuleSpec, Failure> {
    match &cli.spec {
        None => Ok(ModuleSpec::standard()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(ModuleSpec::from_json(&text)?)
        }
    }
}

fn strategy(cli: &Cli) -> Strategy {
    if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::Parallel
    }
}

/// Returns whether everything passed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let spec = load_spec(cli)?;
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Expand { what } => {
            let n = cli.max_degree.unwrap_or(DEFAULT_DEGREE);
            let a0 = || a_series(&spec, 0, n + 2);
            let series = match what {
                Expansion::Ass => ass_series_closed(n),
                Expansion::CyclicNecklaces => cyclic_necklace_series(&a0()?, n)?,
                Expansion::Necklaces => necklace_series(&a0()?, n)?,
                Expansion::Tree => tree_fixed_point(&a_series(&spec, 0, n + 1)?, n)?,
                Expansion::B1 => b1_series(&spec, n)?,
                Expansion::Dih => {
                    let w = dih_series_closed(n);
                    match cli.format {
                        Format::Json => writeln!(out, "{}", wreath_to_json(&w))?,
                        Format::Text => writeln!(out, "{w}")?,
                    }
                    return Ok(true);
                }
            };
            match cli.format {
                Format::Json => writeln!(out, "{}", sym_to_json(&series))?,
                Format::Text => writeln!(out, "{series}")?,
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(suite)
                    .ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?]
            };
            let budget =
                (cli.budget_half_edges.is_some() || cli.budget_classes.is_some()).then(|| {
                    let d = Budget::default();
                    Budget {
                        max_half_edges: cli.budget_half_edges.unwrap_or(d.max_half_edges),
                        max_classes: cli.budget_classes.unwrap_or(d.max_classes),
                        max_legs: usize::MAX,
                    }
                });
            let config = VerifyConfig {
                spec,
                max_degree: cli.max_degree,
                budget,
                strategy: strategy(cli),
            };
            let mut all = true;
            for s in suites {
                let report = run_suite(s, &config)?;
                all &= report.passed();
                match cli.format {
                    Format::Json => writeln!(out, "{}", report.to_json())?,
                    Format::Text => write!(out, "{report}")?,
                }
            }
            Ok(all)
        }
        Command::Enumerate { family, n } => {
            let d = Budget::default();
            let budget = Budget {
                max_half_edges: cli.budget_half_edges.unwrap_or(d.max_half_edges),
                max_classes: cli.budget_classes.unwrap_or(d.max_classes),
                max_legs: d.max_legs,
            };
            let census = enumerate_decorated_with(&spec, *family, *n, &budget, strategy(cli))?;
            match cli.format {
                Format::Json => write_census_jsonl(&census, &mut out)?,
                Format::Text => {
                    for (i, class) in census.classes.iter().enumerate() {
                        let g = &class.graph.graph;
                        writeln!(
                            out,
                            "#{i}: {} vertices, {} edges, modules {:?}",
                            g.vertex_count(),
                            g.edges().len(),
                            class.graph.decoration.module
                        )?;
                    }
                    writeln!(out, "{} classes ({family}, n = {n})", census.len())?;
                }
            }
            Ok(true)
        }
    }
}
