//! Hamiltonian cycle toolkit built around resistance distance.
//!
//! The library treats a graph as an electrical network of unit resistors,
//! computes the effective resistance between every vertex pair, and turns
//! those values into integer edge weights for the travelling-salesman
//! encoding of the Hamiltonian cycle problem. Weight-guided solvers and a
//! benchmark harness then measure how much the weighting helps the search.
//!
//! Module map:
//! - [`graph`]: simple undirected graphs, parsing, connectivity.
//! - [`matrix`]: the small dense linear algebra kernel used internally.
//! - [`resistance`]: resistance distance, its oracle, the Kirchhoff index.
//! - [`weighting`]: the four edge-weighting schemes and weighted instances.
//! - [`generators`]: flower snarks and other named instance families.
//! - [`solver`]: exact search, local-search heuristic, cycle enumerator.
//! - [`tsplib`]: interchange import/export for external TSP solvers.
//! - [`bench`]: scheme-by-instance benchmark grid with reports.

pub mod bench;
pub mod generators;
pub mod graph;
pub mod matrix;
pub mod resistance;
pub mod solver;
pub mod tsplib;
pub mod weighting;

pub use graph::{build_graph, parse_graph, Graph, GraphError, ParseError};
pub use resistance::{
    effective_resistance, kirchhoff_index, resistance_matrix, ResistanceError, ResistanceMatrix,
};
pub use solver::{
    count_hamiltonian_cycles, solve_exact, solve_exact_optimal, solve_heuristic, verify_cycle,
    Budget, SolveResult, SolveStatus, SolverError, SolverKind,
};
pub use weighting::{apply_scheme, Scheme, SchemeTag, WeightError, WeightedInstance};
