//! Benchmark grid: every (instance, scheme, solver, repetition) cell runs as
//! an independent job under a shared budget, and the collected records are
//! rendered as a markdown comparison table plus a flat CSV.
//!
//! The effort metric compared across schemes is `nodes_expanded`; elapsed
//! time is recorded but never asserted against, since it depends on the
//! machine. Cells that exhaust their budget render as `Timeout`. With
//! repetitions the table shows each cell's median record by
//! `(nodes_expanded, elapsed_ms)`; the CSV always carries every record.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{
    complete_graph, cycle_graph, flower_snark, modified_flower_snark, path_graph,
};
use crate::graph::{is_connected, parse_graph, Graph};
use crate::resistance::{resistance_matrix, ResistanceMatrix};
use crate::solver::{solve_exact, solve_heuristic, Budget, SolveStatus, SolverKind};
use crate::weighting::{
    apply_scheme, apply_scheme_with_resistance, Scheme, SchemeTag, WeightError, WeightedInstance,
};

/// One benchmark instance: a display label plus a source, which is either a
/// generator spec (`flower:K`, `modified-flower:K`, `path:N`, `cycle:N`,
/// `complete:N`) or a path to a graph file in any parseable format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub label: String,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Exact,
    Heuristic,
    Both,
}

impl SolverChoice {
    fn kinds(self) -> &'static [SolverKind] {
        match self {
            SolverChoice::Exact => &[SolverKind::Exact],
            SolverChoice::Heuristic => &[SolverKind::Heuristic],
            SolverChoice::Both => &[SolverKind::Exact, SolverKind::Heuristic],
        }
    }
}

/// Budget as written in a config file; times in milliseconds.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_time_ms: Option<u64>,
}

impl BudgetSpec {
    fn to_budget(self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_time: self.max_time_ms.map(Duration::from_millis),
        }
    }
}

fn default_repetitions() -> u32 {
    1
}

/// Instances larger than this skip the exact solver unless forced; beyond
/// desk scale the honest route is exporting for an external solver.
pub const DEFAULT_EXACT_ORDER_LIMIT: usize = 64;

fn default_exact_order_limit() -> usize {
    DEFAULT_EXACT_ORDER_LIMIT
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    pub schemes: Vec<SchemeTag>,
    pub solver: SolverChoice,
    pub budget: BudgetSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_repetitions")]
    pub repetitions: u32,
    #[serde(default = "default_exact_order_limit")]
    pub exact_order_limit: usize,
    #[serde(default)]
    pub force_exact: bool,
    /// Worker pool size; absent means one per available core.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let cfg: BenchConfig =
            serde_json::from_str(text).map_err(|e| BenchError::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.instances.is_empty() {
            return Err(BenchError::InvalidConfig("no instances".into()));
        }
        if self.schemes.is_empty() {
            return Err(BenchError::InvalidConfig("no schemes".into()));
        }
        if self.repetitions == 0 {
            return Err(BenchError::InvalidConfig("repetitions must be >= 1".into()));
        }
        if self.budget.max_nodes.is_none() && self.budget.max_time_ms.is_none() {
            return Err(BenchError::InvalidConfig(
                "budget needs a finite max_nodes or max_time_ms".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("instance '{label}': {message}")]
    InstanceLoad { label: String, message: String },
}

/// Render-ready cell outcome. `Timeout` is the budget-exhausted analogue of
/// a terminated run; `Skipped` marks exact cells above the order limit;
/// `Error` carries a per-cell failure without aborting the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Found,
    NonHamiltonian,
    Timeout,
    Skipped,
    Error(String),
}

impl CellStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CellStatus::Found => "Found",
            CellStatus::NonHamiltonian => "NonHamiltonian",
            CellStatus::Timeout => "Timeout",
            CellStatus::Skipped => "Skipped",
            CellStatus::Error(_) => "Error",
        }
    }

    fn is_decided(&self) -> bool {
        matches!(self, CellStatus::Found | CellStatus::NonHamiltonian)
    }

    /// Lower is better when picking which records represent a cell.
    fn precedence(&self) -> u8 {
        match self {
            CellStatus::Found | CellStatus::NonHamiltonian => 0,
            CellStatus::Timeout => 1,
            CellStatus::Error(_) => 2,
            CellStatus::Skipped => 3,
        }
    }
}

impl From<SolveStatus> for CellStatus {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Found => CellStatus::Found,
            SolveStatus::NonHamiltonian => CellStatus::NonHamiltonian,
            SolveStatus::BudgetExhausted => CellStatus::Timeout,
        }
    }
}

/// One grid cell's outcome. `seed` is the per-repetition derived seed
/// (config seed + repetition index); only the random scheme consumes it but
/// it is recorded uniformly.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub order: usize,
    pub scheme: SchemeTag,
    pub solver: SolverKind,
    pub status: CellStatus,
    pub elapsed_ms: u64,
    pub nodes_expanded: u64,
    pub tour_weight: Option<u64>,
    pub seed: u64,
}

/// Loads a single instance source: generator spec or file path.
pub fn load_instance(source: &str) -> Result<Graph, String> {
    if let Some((kind, param)) = source.split_once(':') {
        let known = matches!(
            kind,
            "flower" | "modified-flower" | "path" | "cycle" | "complete"
        );
        if known {
            let k: usize = param
                .parse()
                .map_err(|_| format!("bad generator parameter '{param}'"))?;
            let g = match kind {
                "flower" => flower_snark(k).map_err(|e| e.to_string())?,
                "modified-flower" => modified_flower_snark(k).map_err(|e| e.to_string())?.graph,
                "path" => path_graph(k).map_err(|e| e.to_string())?,
                "cycle" => cycle_graph(k).map_err(|e| e.to_string())?,
                "complete" => complete_graph(k).map_err(|e| e.to_string())?,
                _ => unreachable!(),
            };
            return Ok(g);
        }
    }
    let text = std::fs::read_to_string(source).map_err(|e| e.to_string())?;
    parse_graph(&text).map_err(|e| e.to_string())
}

/// Per-instance resistance matrix, computed at most once and shared across
/// the resistance and conductivity schemes.
enum OmegaState {
    Ready(Arc<ResistanceMatrix>),
    Unavailable(String),
    NotNeeded,
}

fn prepare_omega(g: &Graph, needed: bool) -> OmegaState {
    if !needed {
        return OmegaState::NotNeeded;
    }
    if !is_connected(g) {
        return OmegaState::Unavailable(WeightError::Disconnected.to_string());
    }
    match resistance_matrix(g) {
        Ok(r) => OmegaState::Ready(Arc::new(r)),
        Err(e) => OmegaState::Unavailable(e.to_string()),
    }
}

fn build_weighted(
    g: &Graph,
    scheme: &Scheme,
    omega: &OmegaState,
) -> Result<WeightedInstance, String> {
    if !matches!(
        scheme.tag(),
        SchemeTag::Resistance | SchemeTag::Conductivity
    ) {
        return apply_scheme(g, scheme).map_err(|e| e.to_string());
    }
    match omega {
        OmegaState::Ready(r) => {
            apply_scheme_with_resistance(g, scheme, Arc::clone(r)).map_err(|e| e.to_string())
        }
        OmegaState::Unavailable(msg) => Err(msg.clone()),
        // Unreachable when run_benchmark prepared the states, but a direct
        // caller may not have.
        OmegaState::NotNeeded => apply_scheme(g, scheme).map_err(|e| e.to_string()),
    }
}

struct Job {
    instance: usize,
    scheme: SchemeTag,
    solver: SolverKind,
    rep: u32,
}

/// Runs the full grid. Instance sources must load (that is a config-level
/// failure); everything after that is recorded per cell.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;

    let mut instances: Vec<(String, Graph)> = Vec::with_capacity(cfg.instances.len());
    for spec in &cfg.instances {
        let g = load_instance(&spec.source).map_err(|message| BenchError::InstanceLoad {
            label: spec.label.clone(),
            message,
        })?;
        instances.push((spec.label.clone(), g));
    }

    let omega_needed = cfg
        .schemes
        .iter()
        .any(|t| matches!(t, SchemeTag::Resistance | SchemeTag::Conductivity));
    let omegas: Vec<OmegaState> = instances
        .iter()
        .map(|(_, g)| prepare_omega(g, omega_needed))
        .collect();

    let mut jobs = Vec::new();
    for instance in 0..instances.len() {
        for &scheme in &cfg.schemes {
            for &solver in cfg.solver.kinds() {
                for rep in 0..cfg.repetitions {
                    jobs.push(Job {
                        instance,
                        scheme,
                        solver,
                        rep,
                    });
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| BenchError::InvalidConfig(e.to_string()))?;
    // Indexed parallel collect preserves job order, so the output is
    // already normalized regardless of scheduling.
    let records: Vec<BenchRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|job| run_cell(cfg, &instances, &omegas, job))
            .collect()
    });
    Ok(records)
}

fn run_cell(
    cfg: &BenchConfig,
    instances: &[(String, Graph)],
    omegas: &[OmegaState],
    job: &Job,
) -> BenchRecord {
    let (label, g) = &instances[job.instance];
    let seed = cfg.seed.wrapping_add(job.rep as u64);
    let mut record = BenchRecord {
        family: label.clone(),
        order: g.order(),
        scheme: job.scheme,
        solver: job.solver,
        status: CellStatus::Skipped,
        elapsed_ms: 0,
        nodes_expanded: 0,
        tour_weight: None,
        seed,
    };

    if job.solver == SolverKind::Exact && g.order() > cfg.exact_order_limit && !cfg.force_exact {
        return record;
    }

    let scheme = job.scheme.to_scheme(seed, Scheme::DEFAULT_SCALE);
    let inst = match build_weighted(g, &scheme, &omegas[job.instance]) {
        Ok(inst) => inst,
        Err(message) => {
            record.status = CellStatus::Error(message);
            return record;
        }
    };

    let budget = cfg.budget.to_budget();
    let result = match job.solver {
        SolverKind::Exact => solve_exact(&inst, budget),
        SolverKind::Heuristic => solve_heuristic(&inst, budget),
    };
    record.status = result.status.into();
    record.elapsed_ms = result.elapsed.as_millis() as u64;
    record.nodes_expanded = result.nodes_expanded;
    record.tour_weight = result.tour_weight;
    record
}

/// Rendered outputs: a human comparison table and a flat machine CSV.
pub struct Report {
    pub markdown: String,
    pub csv: String,
}

pub fn render_table(records: &[BenchRecord]) -> Report {
    Report {
        markdown: render_markdown(records),
        csv: render_csv(records),
    }
}

/// CSV with fixed column order
/// `family,order,scheme,solver,status,elapsed_ms,nodes_expanded,tour_weight,seed`,
/// one line per record, empty tour_weight when absent.
pub fn render_csv(records: &[BenchRecord]) -> String {
    let mut out =
        String::from("family,order,scheme,solver,status,elapsed_ms,nodes_expanded,tour_weight,seed\n");
    for r in records {
        let tour = r.tour_weight.map(|w| w.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            csv_field(&r.family),
            r.order,
            r.scheme.name(),
            r.solver.name(),
            r.status.label(),
            r.elapsed_ms,
            r.nodes_expanded,
            tour,
            r.seed
        );
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Markdown table per solver: rows are instances, columns are schemes, the
/// best decided cell per row (fewest nodes, then least time) is bold.
pub fn render_markdown(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    if records.is_empty() {
        out.push_str("No records.\n");
        return out;
    }

    let mut schemes: Vec<SchemeTag> = Vec::new();
    for r in records {
        if !schemes.contains(&r.scheme) {
            schemes.push(r.scheme);
        }
    }
    let mut solvers: Vec<SolverKind> = Vec::new();
    for r in records {
        if !solvers.contains(&r.solver) {
            solvers.push(r.solver);
        }
    }

    for (si, solver) in solvers.iter().enumerate() {
        if si > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "## {} solver\n", capitalize(solver.name()));
        let _ = write!(out, "| instance | n |");
        for s in &schemes {
            let _ = write!(out, " {} |", s.name());
        }
        out.push('\n');
        let _ = write!(out, "|---|---|");
        for _ in &schemes {
            let _ = write!(out, "---|");
        }
        out.push('\n');

        let mut rows: Vec<(String, usize)> = Vec::new();
        for r in records {
            if r.solver == *solver {
                let key = (r.family.clone(), r.order);
                if !rows.contains(&key) {
                    rows.push(key);
                }
            }
        }

        for (family, order) in rows {
            let mut cells: Vec<Option<&BenchRecord>> = Vec::with_capacity(schemes.len());
            for &scheme in &schemes {
                let group: Vec<&BenchRecord> = records
                    .iter()
                    .filter(|r| {
                        r.solver == *solver
                            && r.family == family
                            && r.order == order
                            && r.scheme == scheme
                    })
                    .collect();
                cells.push(representative(&group));
            }
            let best = cells
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.as_ref().map(|r| (i, r)))
                .filter(|(_, r)| r.status.is_decided())
                .min_by_key(|(_, r)| (r.nodes_expanded, r.elapsed_ms))
                .map(|(i, _)| i);

            let _ = write!(out, "| {family} | {order} |");
            for (i, cell) in cells.iter().enumerate() {
                let text = match cell {
                    None => "-".to_string(),
                    Some(r) => cell_text(r),
                };
                if Some(i) == best {
                    let _ = write!(out, " **{text}** |");
                } else {
                    let _ = write!(out, " {text} |");
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Median record by effort among the best-precedence statuses of a cell's
/// repetitions.
fn representative<'a>(group: &[&'a BenchRecord]) -> Option<&'a BenchRecord> {
    let best_prec = group.iter().map(|r| r.status.precedence()).min()?;
    let mut pool: Vec<&BenchRecord> = group
        .iter()
        .copied()
        .filter(|r| r.status.precedence() == best_prec)
        .collect();
    pool.sort_by_key(|r| (r.nodes_expanded, r.elapsed_ms));
    Some(pool[pool.len() / 2])
}

fn cell_text(r: &BenchRecord) -> String {
    match &r.status {
        CellStatus::Found => format!("{} nodes / {} ms", r.nodes_expanded, r.elapsed_ms),
        CellStatus::NonHamiltonian => format!(
            "{} nodes / {} ms (no cycle)",
            r.nodes_expanded, r.elapsed_ms
        ),
        CellStatus::Timeout => "Timeout".to_string(),
        CellStatus::Skipped => "skipped".to_string(),
        CellStatus::Error(msg) => format!("error: {msg}"),
    }
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}
