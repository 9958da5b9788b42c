//! Tour-search solvers for weighted instances: an exact weight-guided
//! backtracking search, a big-M local-search heuristic, and an exhaustive
//! Hamiltonian-cycle enumerator used as the correctness oracle.

mod enumerate;
mod exact;
mod heuristic;

pub use enumerate::{count_hamiltonian_cycles, enumerate_hamiltonian_cycles};
pub use exact::{solve_exact, solve_exact_optimal};
pub use heuristic::solve_heuristic;

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    /// A Hamiltonian cycle was found.
    Found,
    /// The search space was exhausted without finding a cycle. Only the
    /// exact solver can report this.
    NonHamiltonian,
    /// A node or time budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolverKind {
    Exact,
    Heuristic,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Heuristic => "heuristic",
        }
    }
}

/// Outcome of one solver run.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Vertex sequence of length n when `status == Found`.
    pub cycle: Option<Vec<usize>>,
    /// Total weight along the cycle when `status == Found`.
    pub tour_weight: Option<u64>,
    /// Path-extension attempts (exact) or candidate moves evaluated
    /// (heuristic): the machine-independent effort metric.
    pub nodes_expanded: u64,
    pub elapsed: Duration,
    pub solver: SolverKind,
}

/// Effort limits for a solver run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = Some(max_nodes);
        self
    }

    pub fn with_max_time(mut self, max_time: Duration) -> Self {
        self.max_time = Some(max_time);
        self
    }

    pub fn is_unlimited(&self) -> bool {
        self.max_nodes.is_none() && self.max_time.is_none()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    /// Enumeration found more cycles than the cap allows; `partial` cycles
    /// were counted before stopping.
    #[error("cycle count exceeds cap {cap} (partial count {partial})")]
    CapExceeded { cap: u64, partial: u64 },
}

/// True iff `cycle` visits every vertex exactly once and each consecutive
/// pair (cyclically) is an edge. Malformed input returns false.
pub fn verify_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph};

    #[test]
    fn verify_accepts_the_cycle_of_c5() {
        let g = cycle_graph(5).unwrap();
        assert!(verify_cycle(&g, &[0, 1, 2, 3, 4]));
        assert!(verify_cycle(&g, &[2, 3, 4, 0, 1]));
    }

    #[test]
    fn verify_rejects_non_edges() {
        let g = cycle_graph(5).unwrap();
        assert!(!verify_cycle(&g, &[0, 2, 4, 1, 3]));
    }

    #[test]
    fn verify_rejects_wrong_length_and_repeats() {
        let g = complete_graph(4).unwrap();
        assert!(!verify_cycle(&g, &[0, 1, 2]));
        assert!(!verify_cycle(&g, &[0, 1, 2, 2]));
        assert!(!verify_cycle(&g, &[0, 1, 2, 9]));
    }
}
