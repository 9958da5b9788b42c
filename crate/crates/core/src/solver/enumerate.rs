//! Exhaustive Hamiltonian cycle enumeration. Deliberately plain depth-first
//! search with no weight ordering and no pruning beyond the visited set, so
//! it can serve as an independent reference for the exact solver.

use std::ops::ControlFlow;

use crate::graph::Graph;

use super::SolverError;

/// Counts the Hamiltonian cycles of `g`, each undirected cycle once.
///
/// With a cap, counting stops as soon as cycle number `cap + 1` is found
/// and the overflow is reported as an error carrying the cap itself as the
/// partial count; a graph with exactly `cap` cycles still counts cleanly.
pub fn count_hamiltonian_cycles(g: &Graph, cap: Option<u64>) -> Result<u64, SolverError> {
    let mut count = 0u64;
    let flow = walk(g, |_| {
        if let Some(cap) = cap {
            if count == cap {
                return ControlFlow::Break(());
            }
        }
        count += 1;
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(SolverError::CapExceeded {
            cap: cap.expect("break implies a cap"),
            partial: count,
        }),
        ControlFlow::Continue(()) => Ok(count),
    }
}

/// Collects every Hamiltonian cycle of `g` in canonical form: starting at
/// vertex 0 with the smaller neighbor of 0 second. Cap semantics match
/// [`count_hamiltonian_cycles`].
pub fn enumerate_hamiltonian_cycles(
    g: &Graph,
    cap: Option<u64>,
) -> Result<Vec<Vec<usize>>, SolverError> {
    let mut cycles = Vec::new();
    let flow = walk(g, |cycle| {
        if let Some(cap) = cap {
            if cycles.len() as u64 == cap {
                return ControlFlow::Break(());
            }
        }
        cycles.push(cycle.to_vec());
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(SolverError::CapExceeded {
            cap: cap.expect("break implies a cap"),
            partial: cycles.len() as u64,
        }),
        ControlFlow::Continue(()) => Ok(cycles),
    }
}

/// Depth-first walk over all simple paths from vertex 0, invoking the
/// visitor once per undirected Hamiltonian cycle. Each cycle closes at 0 in
/// both directions; only the traversal with `path[1] < path[n-1]` is
/// reported.
fn walk(g: &Graph, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
    let n = g.order();
    if n < 3 {
        return ControlFlow::Continue(());
    }
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut path = vec![0usize];
    descend(g, n, &mut visited, &mut path, &mut visit)
}

fn descend(
    g: &Graph,
    n: usize,
    visited: &mut Vec<bool>,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let tip = *path.last().expect("path never empty");
    if path.len() == n {
        if g.has_edge(tip, 0) && path[1] < path[n - 1] {
            return visit(path);
        }
        return ControlFlow::Continue(());
    }
    for &next in g.neighbors(tip) {
        if visited[next] {
            continue;
        }
        visited[next] = true;
        path.push(next);
        let flow = descend(g, n, visited, path, visit);
        path.pop();
        visited[next] = false;
        flow?;
    }
    ControlFlow::Continue(())
}
