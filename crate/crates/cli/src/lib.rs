//! Command-line front end: invariant queries, pair checks, poset reports,
//! chain bounds and the worked-example verification suite.

mod render;
mod verify;

pub use verify::{verify_paper, Check, RunReport};

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use knotdom::domination::{evaluate_pair, Verdict};
use knotdom::knotbase::{enrich_record, load_corpus, Corpus, CorpusError, KnotRecord};
use knotdom::poset::{
    build_graph, chain_bound_violations, chain_length_bound, longest_chain, violations_from,
};
use knotdom::{parse_diagram, DiagramError};
use serde_json::{json, Value};
use thiserror::Error;

/// Corpus shipped with the core crate.
pub const BUNDLED_CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/corpus.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_OBSTRUCTED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "knotdom", version, about = "Knot invariants and 1-domination checks")]
pub struct Cli {
    /// Corpus file (JSON array of knot records).
    #[arg(long, global = true, default_value = BUNDLED_CORPUS)]
    pub corpus: PathBuf,
    /// Machine-readable output with sorted keys.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel evaluation (1 = serial).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of a corpus knot, a PD code or a braid word (`B<n>: ...`).
    Invariants { target: String },
    /// Verdict for `k1 >= k2`.
    Check { k1: String, k2: String },
    /// Certified domination graph of a corpus.
    Poset { corpus: Option<PathBuf> },
    /// Chain-length bounds for a corpus knot.
    ChainBound { name: String },
    /// Reproduce the worked examples.
    VerifyPaper,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("unknown knot {0:?} (not in the corpus)")]
    UnknownKnot(String),
    #[error("{0} is neither a corpus name nor a valid diagram: {1}")]
    BadTarget(String, DiagramError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

/// Runs a parsed command, writing to `out`, and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::ThreadPool(e.to_string()))?;
            let mut buf = Vec::new();
            let code = pool.install(|| dispatch(cli, &mut buf))?;
            out.write_all(&buf)?;
            Ok(code)
        }
        None => dispatch(cli, out),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Invariants { target } => invariants(cli, target, out),
        Command::Check { k1, k2 } => check(cli, k1, k2, out),
        Command::Poset { corpus } => poset(cli, corpus.as_deref().unwrap_or(&cli.corpus), out),
        Command::ChainBound { name } => chain_bound(cli, name, out),
        Command::VerifyPaper => {
            let report = verify_paper(&load_corpus(&cli.corpus)?);
            if cli.json {
                emit_json(out, &report.to_json())?;
            } else {
                render::report(out, &report)?;
            }
            Ok(report.exit_code())
        }
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn record<'a>(corpus: &'a Corpus, name: &str) -> Result<&'a KnotRecord, CliError> {
    corpus.get(name).ok_or_else(|| CliError::UnknownKnot(name.to_string()))
}

fn looks_like_diagram(target: &str) -> bool {
    let t = target.trim_start();
    t.is_empty() || t.starts_with('X') || (t.starts_with('B') && t.contains(':'))
}

fn invariants(cli: &Cli, target: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = if looks_like_diagram(target) {
        let pd = parse_diagram(target).map_err(|e| CliError::BadTarget(target.to_string(), e))?;
        let mut r = KnotRecord::new(target.trim());
        r.diagram = Some(pd);
        enrich_record(r)?
    } else {
        record(&load_corpus(&cli.corpus)?, target)?.clone()
    };
    if cli.json {
        emit_json(out, &serde_json::to_value(&r).expect("records serialize"))?;
    } else {
        render::record(out, &r)?;
    }
    Ok(EXIT_OK)
}

fn verdict_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::Equal | Verdict::Certified(_) => EXIT_OK,
        Verdict::Obstructed(_) => EXIT_OBSTRUCTED,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn check(cli: &Cli, k1: &str, k2: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = load_corpus(&cli.corpus)?;
    let (r1, r2) = (record(&corpus, k1)?, record(&corpus, k2)?);
    // Pair certificates can depend on other edges of the corpus (connected
    // sums, transitivity), so the graph verdict is authoritative.
    let verdict = if k1 == k2 {
        evaluate_pair(r1, r2).expect("corpus records are enriched")
    } else {
        build_graph(&corpus).verdict(k1, k2).expect("pair of corpus nodes").clone()
    };
    if cli.json {
        emit_json(out, &verdict.to_json(k1, k2))?;
    } else {
        render::verdict(out, k1, k2, &verdict)?;
    }
    Ok(verdict_exit(&verdict))
}

fn poset(cli: &Cli, path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = load_corpus(path)?;
    let g = build_graph(&corpus);
    let chains: Vec<(String, Vec<String>)> = g
        .nodes()
        .iter()
        .map(|n| (n.clone(), longest_chain(&g, n).expect("node exists")))
        .collect();
    let violations = chain_bound_violations(&g, &corpus);
    if cli.json {
        let mut v = g.to_json();
        v["longest_chains"] = chains.iter().map(|(n, c)| (n.clone(), json!(c))).collect();
        v["chain_bound_violations"] = json!(violations);
        emit_json(out, &v)?;
    } else {
        render::graph(out, &g, &chains, &violations)?;
    }
    Ok(if g.audit_log().is_empty() && violations.is_empty() { EXIT_OK } else { EXIT_ERROR })
}

fn chain_bound(cli: &Cli, name: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = load_corpus(&cli.corpus)?;
    let r = record(&corpus, name)?;
    let bounds = chain_length_bound(r);
    let g = build_graph(&corpus);
    let chain = longest_chain(&g, name).expect("corpus name is a node");
    let violations = violations_from(&g, &corpus, name);
    if cli.json {
        emit_json(
            out,
            &json!({
                "name": name,
                "bounds": bounds,
                "longest_chain": chain,
                "strict_length": chain.len() - 1,
                "violations": violations,
            }),
        )?;
    } else {
        render::bounds(out, name, &bounds, &chain, &violations)?;
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_ERROR })
}
