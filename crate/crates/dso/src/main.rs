use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dso::report::{show, RunReport};
use dso::run::{self, VerifyOptions};
use dso::{blob, format, generate, Error, Result};
use dso_core::DsoConfig;

/// Distance sensitivity oracles: shortest-path distances avoiding one
/// failed vertex or edge.
#[derive(Parser)]
#[command(name = "dso", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "DSO_SEED", default_value_t = 0)]
    seed: u64,
    /// Confidence constant of the sampling stages.
    #[arg(long = "C", global = true, default_value_t = 4.0)]
    confidence: f64,
    /// Base radius exponent.
    #[arg(long, global = true, default_value_t = 0.276724)]
    a: f64,
    /// Resampling attempts per randomized step before giving up.
    #[arg(long, global = true, default_value_t = 64)]
    retry_budget: u32,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random G(n, m) graph in the text format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Maximum edge weight M.
        #[arg(long = "max-weight", short = 'M', default_value_t = 1)]
        max_weight: u32,
        #[arg(long)]
        undirected: bool,
    },
    /// Build an oracle and save it (`--out` is required).
    Build { graph: PathBuf },
    /// Answer one query, or one per stdin line `u v f` when none is given.
    /// A failure is written `v:<vertex>` or `e:<edge>`.
    Query {
        oracle: PathBuf,
        u: Option<usize>,
        v: Option<usize>,
        failure: Option<String>,
    },
    /// Build an oracle and compare it with Dijkstra on every `G − f`.
    Verify {
        graph: PathBuf,
        /// Enumerate all queries when n³ + n²m is at most this.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        /// Sampled queries above the budget.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Damage a stored distance first (checks the checker).
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
    /// Build an oracle and time random queries.
    Bench {
        graph: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        queries: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io { path: p.into(), source: e }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(cli_out: Option<&Path>, json: Option<&Path>, r: &RunReport) -> Result<()> {
    emit(cli_out, &r.to_text())?;
    if let Some(p) = json {
        std::fs::write(p, r.to_json()).map_err(|e| Error::Io { path: p.into(), source: e })?;
    }
    Ok(())
}

fn query_line(dso: &dso_core::FullDso, u: usize, v: usize, f: &str) -> Result<String> {
    let f = format::parse_failure(f)?;
    Ok(show(dso.query(u, v, f)?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Input(format!("--threads: {e}")))?;
    }
    let cfg = DsoConfig { seed: cli.seed, confidence: cli.confidence, a: cli.a, retry_budget: cli.retry_budget, ..DsoConfig::default() };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen { n, m, max_weight, undirected } => {
            let g = generate::generate(n, m, max_weight, !undirected, cli.seed)?;
            emit(out, &format::dump_graph(&g))?;
        }
        Command::Build { graph } => {
            let out = out.ok_or_else(|| Error::Input("build needs --out <oracle file>".into()))?;
            let (dso, time) = run::build_timed(format::read_graph_file(&graph)?, &cfg)?;
            blob::write_file(out, &dso)?;
            print!("{}", run::report("build", &dso, time).to_text());
        }
        Command::Query { oracle, u, v, failure } => {
            let dso = blob::read_file(&oracle)?;
            let mut text = String::new();
            match (u, v, failure) {
                (Some(u), Some(v), Some(f)) => text = query_line(&dso, u, v, &f)? + "\n",
                (None, None, None) => {
                    for (i, line) in io::stdin().lock().lines().enumerate() {
                        let line = line.map_err(|e| Error::Io { path: "<stdin>".into(), source: e })?;
                        let tok: Vec<&str> = line.split_whitespace().collect();
                        if tok.is_empty() {
                            continue;
                        }
                        let bad = || Error::Parse { line: i + 1, msg: "expected \"u v f\"".into() };
                        let [u, v, f] = tok[..] else { return Err(bad()) };
                        let (u, v) = (u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?);
                        text += &query_line(&dso, u, v, f)?;
                        text.push('\n');
                    }
                }
                _ => return Err(Error::Input("give all of u, v and the failure, or none to read stdin".into())),
            }
            emit(out, &text)?;
        }
        Command::Verify { graph, budget, samples, json, corrupt_table } => {
            let opts = VerifyOptions { budget, samples, sample_seed: cli.seed, corrupt: corrupt_table };
            let r = run::verify(format::read_graph_file(&graph)?, &cfg, &opts)?;
            emit_report(out, json.as_deref(), &r)?;
            if r.verify.as_ref().is_some_and(|v| v.mismatches > 0) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench { graph, queries, json } => {
            let r = run::bench(format::read_graph_file(&graph)?, &cfg, queries, cli.seed)?;
            emit_report(out, json.as_deref(), &r)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io::stderr(), "dso: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
