//! Command-line front end: generate instances, weigh and solve them, export
//! interchange files, dump resistance matrices, verify tours, and run
//! benchmark grids.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ohmcycle::bench::{render_table, run_benchmark, BenchConfig};
use ohmcycle::generators::{flower_snark, modified_flower_snark};
use ohmcycle::graph::{parse_graph, Graph};
use ohmcycle::resistance::{omega_csv, resistance_matrix};
use ohmcycle::solver::{
    solve_exact, solve_exact_optimal, solve_heuristic, verify_cycle, Budget, SolveResult,
    SolveStatus,
};
use ohmcycle::tsplib::{export_full_matrix, export_sparse_edges, ExportFormat, ExportOptions};
use ohmcycle::weighting::{apply_scheme, Scheme, SchemeTag};

#[derive(Parser)]
#[command(
    name = "ohmcycle",
    version,
    about = "Hamiltonian cycle toolkit: resistance-distance weighting, solvers, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named instance family as a canonical edge list
    #[command(subcommand)]
    Generate(GenerateFamily),
    /// Weigh a graph and run a solver on it
    Solve(SolveArgs),
    /// Export a weighted instance for external TSP solvers
    Export(ExportArgs),
    /// Run a scheme-by-instance benchmark grid from a JSON config
    Bench(BenchArgs),
    /// Dump the resistance-distance matrix as CSV
    Resistance(ResistanceArgs),
    /// Check whether a vertex sequence is a Hamiltonian cycle of a graph
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenerateFamily {
    /// Flower snark J_k (odd k), optionally with the added edge that makes
    /// it Hamiltonian
    Flower {
        /// Odd snark parameter; the graph has 4(k + 2) vertices
        #[arg(long)]
        k: usize,
        /// Add the edge that turns the snark Hamiltonian
        #[arg(long)]
        modified: bool,
        /// Output file (canonical edge-list format)
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Unit,
    Random,
    Resistance,
    Conductivity,
}

impl SchemeArg {
    fn tag(self) -> SchemeTag {
        match self {
            SchemeArg::Unit => SchemeTag::Unit,
            SchemeArg::Random => SchemeTag::Random,
            SchemeArg::Resistance => SchemeTag::Resistance,
            SchemeArg::Conductivity => SchemeTag::Conductivity,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file (canonical edge list or HCP interchange)
    file: PathBuf,
    /// Edge-weighting scheme
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Seed for the random scheme
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the exact solver (the default)
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Use the local-search heuristic instead
    #[arg(long)]
    heuristic: bool,
    /// Stop after this many search nodes
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Stop after this many seconds
    #[arg(long, value_name = "SECS")]
    max_time: Option<u64>,
    /// Keep searching for the minimum-weight tour (exact solver only)
    #[arg(long, conflicts_with = "heuristic")]
    optimal: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    /// Explicit full-matrix file with big-M non-edges
    Full,
    /// Sparse `n m` / `u v w` edge list
    Sparse,
}

#[derive(Args)]
struct ExportArgs {
    /// Graph file (canonical edge list or HCP interchange)
    file: PathBuf,
    /// Edge-weighting scheme
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Seed for the random scheme
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    format: FormatArg,
    #[arg(long, value_name = "OUT")]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON file mirroring the benchmark config
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Directory for report.md and report.csv
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct ResistanceArgs {
    /// Graph file (canonical edge list or HCP interchange)
    file: PathBuf,
    /// Output CSV file; stdout when absent
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file (canonical edge list or HCP interchange)
    file: PathBuf,
    /// Candidate cycle as space-separated vertex ids, e.g. "0 1 2 3 4"
    #[arg(long)]
    cycle: String,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate(family) => generate(family),
        Command::Solve(args) => solve(args),
        Command::Export(args) => export(args),
        Command::Bench(args) => bench(args),
        Command::Resistance(args) => resistance(args),
        Command::Verify(args) => verify(args),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading graph file {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn build_instance(
    g: &Graph,
    scheme: SchemeArg,
    seed: u64,
) -> Result<ohmcycle::weighting::WeightedInstance> {
    let scheme = scheme.tag().to_scheme(seed, Scheme::DEFAULT_SCALE);
    apply_scheme(g, &scheme).context("applying weighting scheme")
}

fn generate(family: GenerateFamily) -> Result<()> {
    match family {
        GenerateFamily::Flower { k, modified, out } => {
            let mut text;
            if modified {
                let m = modified_flower_snark(k)?;
                text = m.graph.to_edge_list_string();
                let (u, v) = m.added_edge.endpoints();
                text.push_str(&format!("# added_edge {u} {v}\n"));
            } else {
                text = flower_snark(k)?.to_edge_list_string();
            }
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn status_name(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Found => "Found",
        SolveStatus::NonHamiltonian => "NonHamiltonian",
        SolveStatus::BudgetExhausted => "BudgetExhausted",
    }
}

#[derive(serde::Serialize)]
struct SolveJson<'a> {
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<&'a Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tour_weight: Option<u64>,
    nodes_expanded: u64,
    elapsed_ms: u64,
}

fn print_result(result: &SolveResult) {
    let counters = format!(
        "nodes_expanded={} elapsed_ms={}",
        result.nodes_expanded,
        result.elapsed.as_millis()
    );
    match (&result.cycle, result.tour_weight) {
        (Some(cycle), Some(w)) => {
            let verts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            println!(
                "{}: {} | tour_weight={} {}",
                status_name(result.status),
                verts.join(" "),
                w,
                counters
            );
        }
        _ => println!("{} | {}", status_name(result.status), counters),
    }
    let json = SolveJson {
        status: status_name(result.status),
        cycle: result.cycle.as_ref(),
        tour_weight: result.tour_weight,
        nodes_expanded: result.nodes_expanded,
        elapsed_ms: result.elapsed.as_millis() as u64,
    };
    println!("{}", serde_json::to_string(&json).expect("serializable"));
}

fn solve(args: SolveArgs) -> Result<()> {
    let g = load_graph(&args.file)?;
    let inst = build_instance(&g, args.scheme, args.seed)?;
    let mut budget = Budget::unlimited();
    if let Some(n) = args.max_nodes {
        budget = budget.with_max_nodes(n);
    }
    if let Some(secs) = args.max_time {
        budget = budget.with_max_time(Duration::from_secs(secs));
    }
    let result = if args.heuristic {
        solve_heuristic(&inst, budget)
    } else if args.optimal {
        solve_exact_optimal(&inst, budget)
    } else {
        solve_exact(&inst, budget)
    };
    print_result(&result);
    Ok(())
}

fn export(args: ExportArgs) -> Result<()> {
    let g = load_graph(&args.file)?;
    let inst = build_instance(&g, args.scheme, args.seed)?;
    let name = args
        .file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string());
    let text = match args.format {
        FormatArg::Full => {
            let opts = ExportOptions::new(ExportFormat::FullMatrix, name);
            export_full_matrix(&inst, &opts)?
        }
        FormatArg::Sparse => {
            let opts = ExportOptions::new(ExportFormat::SparseEdgeList, name);
            export_sparse_edges(&inst, &opts)
        }
    };
    fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let cfg = BenchConfig::from_json(&text)?;
    let records = run_benchmark(&cfg)?;
    let report = render_table(&records);
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let md = args.out.join("report.md");
    let csv = args.out.join("report.csv");
    fs::write(&md, report.markdown).with_context(|| format!("writing {}", md.display()))?;
    fs::write(&csv, report.csv).with_context(|| format!("writing {}", csv.display()))?;
    println!(
        "{} records written to {} and {}",
        records.len(),
        md.display(),
        csv.display()
    );
    Ok(())
}

fn resistance(args: ResistanceArgs) -> Result<()> {
    let g = load_graph(&args.file)?;
    let r = resistance_matrix(&g).context("computing resistance matrix")?;
    let csv = omega_csv(&r);
    match args.out {
        Some(path) => {
            fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    let g = load_graph(&args.file)?;
    let mut cycle = Vec::new();
    for token in args.cycle.split_whitespace() {
        let v: usize = token
            .parse()
            .with_context(|| format!("invalid vertex id '{token}' in --cycle"))?;
        cycle.push(v);
    }
    if cycle.is_empty() {
        bail!("--cycle is empty");
    }
    if verify_cycle(&g, &cycle) {
        println!("valid");
        Ok(())
    } else {
        println!("invalid");
        std::process::exit(1);
    }
}
