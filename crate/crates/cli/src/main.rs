//! `cnred`: reducibility reports, fixtures and graph checks from the command line.
//!
//! Every command writes one JSON report to stdout and exits with 0 when the
//! checked property holds, 1 when it fails, and 2 on bad input or an
//! internal error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cnred::configmodel::{audit_against_exceptions, Configuration, ConflictSpec};
use cnred::engine::{self, AnalyzeOptions, SCHEMA_VERSION};
use cnred::fixtures::{self, FIXTURE_NAMES};
use cnred::oracle::{self, ColoredGraph};
use cnred::plane::{self, PlaneGraph};
use cnred::rational::HalfInt;
use cnred::schedule::TermOrder;

#[derive(Parser)]
#[command(name = "cnred", version, about = "Capped Nullstellensatz reductions and strong edge-coloring checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Greedy,
    Input,
}

impl From<Order> for TermOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Greedy => TermOrder::Greedy,
            Order::Input => TermOrder::Input,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a configuration's product and search for a witness monomial.
    Reduce {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "greedy")]
        order: Order,
        /// Include per-batch statistics and wall time.
        #[arg(long)]
        stats: bool,
        /// Report only the coefficient of this exponent vector.
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<u8>>,
    },
    /// Run a built-in fixture, or all of them.
    Fixture {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Exact strong chromatic index, searched up to `--max` colors.
    #[command(name = "chi-s")]
    ChiS {
        graph: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Euler charges and the discharging ledger of a plane graph.
    Discharge { plane: PathBuf },
    /// Random list assignments checked for list-colorability.
    Probe {
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare a transcribed exception list with the geometry.
    Audit { config: PathBuf },
}

struct Outcome {
    report: Value,
    holds: bool,
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Reduce { config, order, stats, target } => {
            cmd_reduce(&config, order.into(), stats, target.as_deref())
        }
        Command::Fixture { name, all } => cmd_fixture(name.as_deref(), all),
        Command::ChiS { graph, max } => cmd_chi_s(&graph, max),
        Command::Discharge { plane } => cmd_discharge(&plane),
        Command::Probe { config, trials, seed } => cmd_probe(&config, trials, seed),
        Command::Audit { config } => cmd_audit(&config),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_config(path: &Path) -> Result<Configuration, String> {
    Configuration::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Prepends the schema field to a serialized report object.
fn versioned<T: Serialize>(v: &T) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Value::Object(fields) = to_value(v) {
        for (k, val) in fields {
            if k != "schema" {
                out.insert(k, val);
            }
        }
    }
    Value::Object(out)
}

fn cmd_reduce(path: &Path, order: TermOrder, stats: bool, target: Option<&[u8]>) -> CmdResult {
    let c = load_config(path)?;
    if let Some(exps) = target {
        let coefficient = engine::check_monomial(&c, exps).map_err(|e| e.to_string())?;
        return Ok(Outcome {
            report: json!({
                "schema": SCHEMA_VERSION,
                "config_id": c.id,
                "target": exps,
                "coefficient": coefficient,
            }),
            holds: coefficient != 0,
        });
    }
    let opts = AnalyzeOptions { order, stats, ..Default::default() };
    let r = engine::analyze(&c, opts).map_err(|e| e.to_string())?;
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    Ok(Outcome { holds: r.holds(), report: to_value(&r) })
}

#[derive(Serialize)]
struct FixtureRow {
    schema: u32,
    fixture: &'static str,
    conflict_source: &'static str,
    term_count: usize,
    cap_sum: u32,
    all_witness_count: usize,
    claimed: i64,
    computed: i64,
    matches: bool,
}

fn cmd_fixture(name: Option<&str>, all: bool) -> CmdResult {
    if !all {
        let name = name.expect("clap requires a name without --all");
        let r = engine::run_fixture(name).map_err(|e| e.to_string())?;
        return Ok(Outcome { holds: r.matches(), report: to_value(&r) });
    }
    let mut rows = Vec::new();
    for name in FIXTURE_NAMES {
        let f = fixtures::fixture(name).map_err(|e| e.to_string())?;
        let r = engine::analyze(&f.config, AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        let check = r.claimed_witness_check.as_ref().expect("fixtures carry a claimed witness");
        rows.push(FixtureRow {
            schema: SCHEMA_VERSION,
            fixture: f.name,
            conflict_source: r.conflict_source,
            term_count: r.term_count,
            cap_sum: r.cap_sum,
            all_witness_count: r.all_witness_count,
            claimed: check.claimed,
            computed: check.computed,
            matches: check.matches,
        });
    }
    let holds = rows.iter().all(|r| r.matches);
    Ok(Outcome { report: to_value(&rows), holds })
}

fn cmd_chi_s(path: &Path, max: usize) -> CmdResult {
    let text = read(path)?;
    let g = ColoredGraph::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let index = oracle::strong_chromatic_index(&g, max);
    let coloring = index.and_then(|k| oracle::strong_coloring(&g, k));
    let report = json!({
        "schema": SCHEMA_VERSION,
        "num_vertices": g.num_vertices(),
        "num_edges": g.edges().len(),
        "ore_degree": oracle::ore_degree(&g).ok(),
        "max": max,
        "strong_chromatic_index": index,
        "exceeds_max": index.is_none(),
        "coloring": coloring,
    });
    Ok(Outcome { report, holds: index.is_some() })
}

fn cmd_discharge(path: &Path) -> CmdResult {
    let pg = PlaneGraph::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let ledger = plane::discharge(&pg).map_err(|e| e.to_string())?;
    let holds = ledger.conserved() && ledger.final_total == HalfInt::from_int(-12);
    Ok(Outcome { report: versioned(&ledger), holds })
}

fn cmd_probe(path: &Path, trials: usize, seed: u64) -> CmdResult {
    let c = load_config(path)?;
    let r = oracle::cn_soundness_probe(&c, trials, seed).map_err(|e| e.to_string())?;
    Ok(Outcome { holds: r.passed(), report: versioned(&r) })
}

fn cmd_audit(path: &Path) -> CmdResult {
    let c = load_config(path)?;
    let claims = match (&c.claimed_exceptions, &c.conflicts) {
        (Some(claims), _) => claims.clone(),
        (None, ConflictSpec::ExplicitExceptions { pairs }) => pairs.clone(),
        _ => return Err("audit needs claimed_exceptions or explicit_exceptions".into()),
    };
    let audit = audit_against_exceptions(&c, &claims).map_err(|e| e.to_string())?;
    let mut report = versioned(&audit);
    report["config_id"] = json!(c.id);
    report["clean"] = json!(audit.is_clean());
    Ok(Outcome { holds: audit.is_clean(), report })
}
