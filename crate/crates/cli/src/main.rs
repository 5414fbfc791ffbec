use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catroute::bench::{run_bench, write_csv, BenchError, BenchSweep, GraphFamily};
use catroute::constructions::{construct, ConstructionError, Method};
use catroute::oracle::{brute_force_min_memdim, Candidates, OracleError};
use catroute::{
    diameter, find_disconnected_category, find_unshattered_pair, memdim_bound, route,
    verify_all_pairs, CategoryParseError, CategorySystem, Graph, GraphError, Outcome, StuckReason,
};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

/// Categories that make greedy routing deliver on connected graphs.
#[derive(Debug, Parser)]
#[command(name = "catroute", version)]
struct Cli {
    /// Only print machine-readable output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a category system for a graph.
    Construct {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Category file to write; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a category system against a graph. Exits 0 iff routing works.
    Check { graph: PathBuf, categories: PathBuf },
    /// Trace one greedy route.
    Route {
        graph: PathBuf,
        categories: PathBuf,
        src: usize,
        dst: usize,
    },
    /// Run a construction sweep and emit CSV.
    Bench {
        /// Comma-separated generators: tree, er, ws, path, star, complete, binary.
        #[arg(long, value_delimiter = ',', default_value = "tree")]
        gen: Vec<GraphFamily>,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Seeds per (generator, n), starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive minimum membership dimension for tiny graphs.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Allow disconnected vertex subsets as categories.
        #[arg(long)]
        any_subsets: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Path,
    Tree,
    Graph,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Path => Method::Path,
            MethodArg::Tree => Method::Tree,
            MethodArg::Graph => Method::Graph,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0}")]
    IdMismatch(String),
    #[error("{0}")]
    Guard(#[from] OracleError),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } => 2,
            CliError::Disconnected => 3,
            CliError::IdMismatch(_) => 4,
            CliError::Guard(_) => 5,
            CliError::Unsupported(_) | CliError::Bench(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected => CliError::Disconnected,
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Graph(g) => g.into(),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

/// Human-readable lines go through here so `--quiet` can drop them.
struct Report {
    quiet: bool,
    stderr: bool,
}

impl Report {
    fn say(&self, line: impl AsRef<str>) {
        match (self.quiet, self.stderr) {
            (true, _) => {}
            (false, false) => println!("{}", line.as_ref()),
            (false, true) => eprintln!("{}", line.as_ref()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::parse(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_categories(path: &Path, n: usize) -> Result<CategorySystem, CliError> {
    CategorySystem::parse(&read(path)?, n).map_err(|e| match e {
        CategoryParseError::OutOfRange { .. } => {
            CliError::IdMismatch(format!("{}: {e}", path.display()))
        }
        CategoryParseError::Syntax { .. } => CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_construct(
    report: &Report,
    graph: &Path,
    method: MethodArg,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let g = load_graph(graph)?;
    if g.n() == 0 {
        return Err(CliError::Unsupported("graph has no vertices".into()));
    }
    let diam = diameter(&g)?;
    let resolved = Method::from(method).resolve(&g);
    let system = construct(&g, method.into())?;
    write_output(out, &system.to_text())?;
    // With the categories on stdout the report moves to stderr.
    let report = Report {
        quiet: report.quiet,
        stderr: out.is_none(),
    };
    report.say(format!(
        "method: {}",
        format!("{resolved:?}").to_lowercase()
    ));
    report.say(format!("categories: {}", system.len()));
    report.say(format!("memdim: {}", system.memdim()));
    report.say(format!("diam: {diam}"));
    report.say(format!("bound: {}", memdim_bound(diam, g.n())));
    Ok(true)
}

fn cmd_check(report: &Report, graph: &Path, categories: &Path) -> Result<bool, CliError> {
    let g = load_graph(graph)?;
    let s = load_categories(categories, g.n())?;
    let verdict = verify_all_pairs(&g, &s)?;
    let unshattered = find_unshattered_pair(&g, &s);
    let disconnected = find_disconnected_category(&g, &s);

    match unshattered {
        None => report.say("shattered: yes"),
        Some((a, b)) => report.say(format!("shattered: no (pair {a} -> {b})")),
    }
    match disconnected {
        None => report.say("internally connected: yes"),
        Some(c) => report.say(format!("internally connected: no (category {c})")),
    }
    report.say(format!("memdim: {}", s.memdim()));
    match verdict.first_failure {
        None => report.say(format!(
            "routing: works on all {} ordered pairs",
            verdict.pairs_checked
        )),
        Some((u, t)) => report.say(format!(
            "routing: fails, {u} has no closer neighbor towards {t}"
        )),
    }

    let pair =
        |p: Option<(usize, usize)>| p.map_or("none".to_string(), |(a, b)| format!("{a}->{b}"));
    println!(
        "shattered={} internally_connected={} memdim={} works={} pairs={} delivered={} unshattered_pair={} failing_pair={}",
        unshattered.is_none(),
        disconnected.is_none(),
        s.memdim(),
        verdict.works,
        verdict.pairs_checked,
        verdict.delivered,
        pair(unshattered),
        pair(verdict.first_failure),
    );
    Ok(verdict.works)
}

fn cmd_route(graph: &Path, categories: &Path, src: usize, dst: usize) -> Result<bool, CliError> {
    let g = load_graph(graph)?;
    let s = load_categories(categories, g.n())?;
    for v in [src, dst] {
        if v >= g.n() {
            return Err(CliError::IdMismatch(format!(
                "vertex {v} out of range for a graph on {} vertices",
                g.n()
            )));
        }
    }
    let r = route(&g, &s, src, dst);
    for (k, (u, d)) in r.path.iter().zip(&r.distances).enumerate() {
        println!("hop {k}: {u} (d={d})");
    }
    match r.outcome {
        Outcome::Delivered => {
            println!("delivered in {} hops", r.hops());
            Ok(true)
        }
        Outcome::Stuck { at, reason } => {
            let why = match reason {
                StuckReason::NoCloserNeighbor => "no neighbor is strictly closer",
                StuckReason::Indistinguishable => "it already holds every category of the target",
            };
            println!("stuck at {at}: {why}");
            Ok(false)
        }
    }
}

fn cmd_bench(
    report: &Report,
    families: Vec<GraphFamily>,
    sizes: Vec<usize>,
    seeds: u64,
    first_seed: u64,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let sweep = BenchSweep {
        families,
        sizes,
        seeds: (first_seed..first_seed + seeds).collect(),
    };
    let records = run_bench(&sweep)?;
    let mut csv = Vec::new();
    write_csv(&records, &mut csv)?;
    write_output(out, &String::from_utf8(csv).expect("csv is ascii"))?;
    if out.is_some() {
        let worst = records.iter().map(|r| r.ratio()).fold(0.0, f64::max);
        report.say(format!(
            "{} instances, max memdim/bound ratio {worst:.3}",
            records.len()
        ));
    }
    Ok(true)
}

fn cmd_oracle(report: &Report, graph: &Path, max_dim: usize, any: bool) -> Result<bool, CliError> {
    let g = load_graph(graph)?;
    let candidates = if any {
        Candidates::All
    } else {
        Candidates::Connected
    };
    match brute_force_min_memdim(&g, max_dim, candidates)? {
        Some((system, dim)) => {
            println!("min memdim = {dim}");
            report.say(system.to_text().trim_end());
            Ok(true)
        }
        None => {
            println!("no working system with memdim <= {max_dim}");
            Ok(false)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let report = Report {
        quiet: cli.quiet,
        stderr: false,
    };
    match cli.command {
        Command::Construct { graph, method, out } => {
            cmd_construct(&report, &graph, method, out.as_deref())
        }
        Command::Check { graph, categories } => cmd_check(&report, &graph, &categories),
        Command::Route {
            graph,
            categories,
            src,
            dst,
        } => cmd_route(&graph, &categories, src, dst),
        Command::Bench {
            gen,
            n,
            seeds,
            seed,
            out,
        } => cmd_bench(&report, gen, n, seeds, seed, out.as_deref()),
        Command::Oracle {
            graph,
            max_dim,
            any_subsets,
        } => cmd_oracle(&report, &graph, max_dim, any_subsets),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
