use std::io::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use ola_core::bounds::{verify_bounds, write_csv, Sweep};
use ola_core::generate::{generate_instance, Params};
use ola_core::io::{parse_graph, to_edge_list};
use ola_core::kernel::{kernel_gate, Gate};
use ola_core::search::{solve_with, ComponentStats, SearchOptions, SolveReport};
use ola_core::{exact_ola_dp, kernelize, Arrangement, Error, Graph, SearchBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Decide,
    Kernel,
    Oracle,
    Count,
    Bench,
    Generate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

/// Decide whether a graph has a linear arrangement of cost at most |E| + k.
#[derive(Debug, Parser)]
#[command(name = "ola", version)]
struct Cli {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Budget on the net cost.
    #[arg(long)]
    k: Option<usize>,
    /// Graph file, edge list or DIMACS.
    #[arg(long, conflicts_with = "family")]
    input: Option<std::path::PathBuf>,
    /// Generator family, e.g. `tree_plus_chords`.
    #[arg(long)]
    family: Option<String>,
    /// Generator parameters, e.g. `n=20,c=2`.
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Only explore one of each mirror-image pair of arrangements.
    #[arg(long)]
    symmetry_prune: bool,
}

macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

enum Outcome {
    Yes,
    No,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn positions(a: &Arrangement) -> Vec<usize> {
    a.positions().to_vec()
}

fn gate_name(g: Option<Gate>) -> Value {
    match g {
        None => Value::Null,
        Some(Gate::Accept) => json!("accept"),
        Some(Gate::RejectTooBig) => json!("reject_too_big"),
    }
}

fn component_json(c: &ComponentStats) -> Value {
    json!({
        "first_vertex": c.first_vertex,
        "n": c.n,
        "m": c.m,
        "is_path": c.is_path,
        "kernel_n": c.kernel_n,
        "kernel_m": c.kernel_m,
        "suppressed": c.suppressed,
        "gate": gate_name(c.gate),
        "net_cost": c.net_cost,
    })
}

fn decide_json(r: &SolveReport, parse: Duration) -> Value {
    json!({
        "decision": if r.decision { "yes" } else { "no" },
        "k": r.k,
        "ola_plus": r.net_cost_opt,
        "arrangement": r.arrangement.as_ref().map(positions),
        "kernel_stats": r.kernel_stats.iter().map(component_json).collect::<Vec<_>>(),
        "timings_ms": {
            "parse": ms(parse),
            "components": ms(r.timings.components),
            "kernelize": ms(r.timings.kernelize),
            "search": ms(r.timings.search),
            "lift": ms(r.timings.lift),
        },
    })
}

fn print_value(v: &Value, format: Format) {
    match format {
        Format::Json => out!("{v}"),
        Format::Text | Format::Csv => out!("{}", serde_json::to_string_pretty(v).unwrap()),
    }
}

fn load(cli: &Cli) -> Result<Graph, Error> {
    match (&cli.input, &cli.family) {
        (Some(path), None) => parse_graph(path),
        (None, Some(family)) => generate_instance(family, &Params::parse(&cli.params)?, cli.seed),
        _ => Err(Error::BadParameters("give exactly one of --input and --family".into())),
    }
}

fn require_k(cli: &Cli) -> Result<usize, Error> {
    cli.k
        .ok_or_else(|| Error::BadParameters("--k is required in this mode".into()))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let opts = SearchOptions {
        symmetry_prune: cli.symmetry_prune,
        threads: cli.threads.max(1),
    };
    match cli.mode {
        Mode::Decide => {
            let k = require_k(cli)?;
            let start = Instant::now();
            let g = load(cli)?;
            let parse = start.elapsed();
            let report = solve_with(&g, SearchBudget(k), &opts)?;
            match cli.format {
                Format::Json => print_value(&decide_json(&report, parse), cli.format),
                Format::Text | Format::Csv => {
                    out!("decision {}", if report.decision { "yes" } else { "no" });
                    out!("k {k}");
                    if let Some(c) = report.net_cost_opt {
                        out!("ola_plus {c}");
                    }
                    if let Some(a) = &report.arrangement {
                        let order: Vec<String> = a.order().iter().map(|v| v.to_string()).collect();
                        out!("order {}", order.join(" "));
                    }
                }
            }
            Ok(if report.decision { Outcome::Yes } else { Outcome::No })
        }
        Mode::Kernel => {
            let k = require_k(cli)?;
            let g = load(cli)?;
            let split = ola_core::graph::connected_components(&g);
            let mut parts = Vec::new();
            for part in &split.parts {
                let kernel = kernelize(&part.graph, k)?;
                let kept: Vec<usize> = kernel.record.kept.iter().map(|&v| part.to_parent[v - 1]).collect();
                let suppressed: Vec<usize> = kernel.plan.order.iter().map(|&v| part.to_parent[v - 1]).collect();
                let edges: Vec<(usize, usize)> = kernel
                    .record
                    .kernel_edges
                    .iter()
                    .map(|&(u, v)| (part.to_parent[u - 1], part.to_parent[v - 1]))
                    .collect();
                parts.push(json!({
                    "n": part.graph.n(),
                    "m": part.graph.m(),
                    "kernel_n": kernel.graph.n(),
                    "kernel_m": kernel.graph.m(),
                    "gate": gate_name(Some(kernel_gate(&kernel.graph, k))),
                    "suppressed": suppressed,
                    "kept": kept,
                    "kernel_edges": edges,
                }));
            }
            print_value(&json!({ "k": k, "components": parts }), cli.format);
            Ok(Outcome::Yes)
        }
        Mode::Oracle => {
            let g = load(cli)?;
            let r = exact_ola_dp(&g)?;
            print_value(
                &json!({ "ola": r.ola, "ola_plus": r.ola_plus, "arrangement": positions(&r.witness) }),
                cli.format,
            );
            Ok(Outcome::Yes)
        }
        Mode::Count => {
            let p = Params::parse(&cli.params)?;
            let d = Sweep::default();
            let sweep = Sweep {
                path_n: 2..=p.get("path_n").unwrap_or(*d.path_n.end()),
                path_k: 0..=p.get("path_k").unwrap_or(*d.path_k.end()),
                tree_n: 2..=p.get("tree_n").unwrap_or(*d.tree_n.end()),
                tree_k_max: p.get("tree_k").unwrap_or(d.tree_k_max),
                ..d
            };
            let reports = verify_bounds(&sweep)?;
            let stdout = std::io::stdout();
            let _ = write_csv(&reports, stdout.lock());
            Ok(if reports.iter().all(|r| r.holds) { Outcome::Yes } else { Outcome::No })
        }
        Mode::Bench => {
            let k_max = require_k(cli)?;
            let g = load(cli)?;
            out!("n,m,k,decision,ola_plus,kernelize_ms,search_ms,total_ms");
            for k in 0..=k_max {
                let start = Instant::now();
                let r = solve_with(&g, SearchBudget(k), &opts)?;
                let total = start.elapsed();
                out!(
                    "{},{},{},{},{},{:.3},{:.3},{:.3}",
                    g.n(),
                    g.m(),
                    k,
                    if r.decision { "yes" } else { "no" },
                    r.net_cost_opt.map_or(String::new(), |c| c.to_string()),
                    ms(r.timings.kernelize),
                    ms(r.timings.search),
                    ms(total),
                );
            }
            Ok(Outcome::Yes)
        }
        Mode::Generate => {
            let g = load(cli)?;
            match cli.format {
                Format::Json => out!("{}", json!({ "n": g.n(), "m": g.m(), "edges": g.edges() })),
                Format::Text | Format::Csv => {
                    let _ = std::io::stdout().lock().write_all(to_edge_list(&g).as_bytes());
                }
            }
            Ok(Outcome::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
