//! Exact solver: depth-first path extension from vertex 0 with candidate
//! edges tried in ascending weight order, so the weighting scheme steers the
//! search while never changing the verdict.
//!
//! Pruning at every extension point:
//!  (a) an unvisited vertex with fewer than two usable incident edges kills
//!      the branch (usable = to another unvisited vertex, to the path tip,
//!      or to the start vertex);
//!  (b) the subgraph on the unvisited vertices plus both path endpoints must
//!      be connected without using the direct tip-start edge;
//!  (c) a vertex left with exactly two usable edges has both forced; a
//!      forced tip edge fixes the next step, two forced tip edges kill the
//!      branch.

use std::time::Instant;

use crate::graph::{is_connected, Graph};
use crate::weighting::WeightedInstance;

use super::{Budget, SolveResult, SolveStatus, SolverKind, verify_cycle};

/// Finds the first Hamiltonian cycle in weight order, proves there is none,
/// or gives up when the budget runs out. For the decision problem any tour
/// suffices, so the search stops at the first cycle.
pub fn solve_exact(inst: &WeightedInstance, budget: Budget) -> SolveResult {
    run(inst, budget, false)
}

/// Branch-and-bound variant that keeps searching for the minimum-weight
/// tour, using the best tour found so far as the bound. When the budget
/// expires early the best tour seen is still reported as `Found`.
pub fn solve_exact_optimal(inst: &WeightedInstance, budget: Budget) -> SolveResult {
    run(inst, budget, true)
}

fn run(inst: &WeightedInstance, budget: Budget, optimal: bool) -> SolveResult {
    let started = Instant::now();
    let g = inst.graph();
    let n = g.order();

    // Disconnected (or degenerate) input cannot carry a tour.
    if n < 3 || !is_connected(g) {
        return SolveResult {
            status: SolveStatus::NonHamiltonian,
            cycle: None,
            tour_weight: None,
            nodes_expanded: 0,
            elapsed: started.elapsed(),
            solver: SolverKind::Exact,
        };
    }

    let mut search = Search::new(inst, budget, optimal, started);
    search.extend(0);

    let elapsed = started.elapsed();
    let (status, cycle, tour_weight) = match (search.best.take(), search.exhausted) {
        (Some((w, cycle)), _) => {
            debug_assert!(verify_cycle(g, &cycle));
            debug_assert_eq!(inst.tour_weight(&cycle), Some(w));
            (SolveStatus::Found, Some(cycle), Some(w))
        }
        (None, true) => (SolveStatus::BudgetExhausted, None, None),
        (None, false) => (SolveStatus::NonHamiltonian, None, None),
    };
    SolveResult {
        status,
        cycle,
        tour_weight,
        nodes_expanded: search.nodes,
        elapsed,
        solver: SolverKind::Exact,
    }
}

enum Flow {
    /// Unwind the whole search: first cycle found, or budget gone.
    Stop,
    /// Subtree finished; keep exploring siblings.
    Continue,
}

struct Search<'a> {
    inst: &'a WeightedInstance,
    g: &'a Graph,
    n: usize,
    /// Per-vertex neighbors with weights, sorted ascending by
    /// (weight, vertex index): the scheme's steering order.
    ordered: Vec<Vec<(u64, usize)>>,
    visited: Vec<bool>,
    path: Vec<usize>,
    prefix_weight: u64,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    exhausted: bool,
    optimal: bool,
    min_weight: u64,
    best: Option<(u64, Vec<usize>)>,
    // Scratch buffers, reused across extension points.
    avail: Vec<u32>,
    mark: Vec<u64>,
    stamp: u64,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a WeightedInstance, budget: Budget, optimal: bool, started: Instant) -> Self {
        let g = inst.graph();
        let n = g.order();
        let mut ordered = Vec::with_capacity(n);
        for v in 0..n {
            let mut list: Vec<(u64, usize)> = g
                .neighbors(v)
                .iter()
                .map(|&w| (inst.weight_between(v, w).expect("neighbor edge"), w))
                .collect();
            list.sort_unstable();
            ordered.push(list);
        }
        let min_weight = inst.weights().map(|(_, w)| w).min().unwrap_or(1);

        let mut visited = vec![false; n];
        visited[0] = true;
        Search {
            inst,
            g,
            n,
            ordered,
            visited,
            path: vec![0],
            prefix_weight: 0,
            nodes: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_time.map(|t| started + t),
            exhausted: false,
            optimal,
            min_weight,
            best: None,
            avail: vec![0; n],
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn extend(&mut self, tip: usize) -> Flow {
        if self.path.len() == self.n {
            if let Some(closing) = self.inst.weight_between(tip, 0) {
                let total = self.prefix_weight + closing;
                match &self.best {
                    Some((bw, _)) if total >= *bw => {}
                    _ => self.best = Some((total, self.path.clone())),
                }
                if !self.optimal {
                    return Flow::Stop;
                }
            }
            return Flow::Continue;
        }

        let forced = match self.prune(tip) {
            Prune::Dead => return Flow::Continue,
            Prune::Viable { forced } => forced,
        };

        for idx in 0..self.ordered[tip].len() {
            let (w, next) = self.ordered[tip][idx];
            if self.visited[next] {
                continue;
            }
            if let Some(f) = forced {
                if next != f {
                    continue;
                }
            }
            if self.optimal {
                if let Some((bw, _)) = &self.best {
                    // Every remaining cycle edge costs at least min_weight.
                    let remaining = (self.n - self.path.len()) as u64;
                    if self.prefix_weight + w + remaining * self.min_weight >= *bw {
                        continue;
                    }
                }
            }

            if self.nodes >= self.max_nodes {
                self.exhausted = true;
                return Flow::Stop;
            }
            self.nodes += 1;
            if self.nodes % 256 == 0 {
                if let Some(deadline) = self.deadline {
                    if Instant::now() >= deadline {
                        self.exhausted = true;
                        return Flow::Stop;
                    }
                }
            }

            self.visited[next] = true;
            self.path.push(next);
            self.prefix_weight += w;
            let flow = self.extend(next);
            self.prefix_weight -= w;
            self.path.pop();
            self.visited[next] = false;
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Runs prunes (a)-(c) at the current extension point. `avail[x]` is the
    /// number of edges of unvisited `x` that a completion of the current
    /// path could still use.
    fn prune(&mut self, tip: usize) -> Prune {
        let unvisited_left = self.n - self.path.len();

        for x in 0..self.n {
            if self.visited[x] {
                continue;
            }
            let mut count = 0u32;
            for &y in self.g.neighbors(x) {
                if !self.visited[y] || y == tip || (y == 0 && tip != 0) {
                    count += 1;
                }
            }
            if count < 2 {
                return Prune::Dead;
            }
            self.avail[x] = count;
        }

        // Reachability over unvisited vertices: a completion is a path
        // tip -> (all unvisited) -> 0, so everything must hang together
        // without stepping through visited interior vertices, and without
        // the direct tip-0 edge when unvisited vertices remain.
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        self.queue.push(tip);
        self.mark[tip] = stamp;
        let mut reached_unvisited = 0usize;
        let mut reached_zero = tip == 0;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &y in self.g.neighbors(x) {
                if self.mark[y] == stamp {
                    continue;
                }
                if !self.visited[y] {
                    self.mark[y] = stamp;
                    self.queue.push(y);
                    reached_unvisited += 1;
                } else if y == 0 && x != tip {
                    // The start vertex is an endpoint: reachable, never
                    // traversed through.
                    self.mark[y] = stamp;
                    reached_zero = true;
                }
            }
        }
        if reached_unvisited < unvisited_left || !reached_zero {
            return Prune::Dead;
        }

        // Forced edges at the tip. Skipped at the root, where the start
        // vertex still has both cycle slots open.
        let mut forced = None;
        if tip != 0 {
            for idx in 0..self.ordered[tip].len() {
                let (_, x) = self.ordered[tip][idx];
                if self.visited[x] || self.avail[x] != 2 {
                    continue;
                }
                if forced.is_some() {
                    // Two forced edges at a tip with one free slot.
                    return Prune::Dead;
                }
                forced = Some(x);
            }
        }
        Prune::Viable { forced }
    }
}

enum Prune {
    Dead,
    Viable { forced: Option<usize> },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, flower_snark, modified_flower_snark};
    use crate::graph::build_graph;
    use crate::weighting::{apply_scheme, Scheme};

    #[test]
    fn finds_the_unique_cycle_of_c5() {
        let g = cycle_graph(5).unwrap();
        let inst = apply_scheme(&g, &Scheme::unit()).unwrap();
        let r = solve_exact(&inst, Budget::unlimited());
        assert_eq!(r.status, SolveStatus::Found);
        assert_eq!(r.cycle, Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(r.tour_weight, Some(5));
        assert_eq!(r.solver, SolverKind::Exact);
    }

    #[test]
    fn proves_flower_snark_one_non_hamiltonian_under_every_scheme() {
        let g = flower_snark(1).unwrap();
        for scheme in [
            Scheme::unit(),
            Scheme::random(3),
            Scheme::resistance(),
            Scheme::conductivity(),
        ] {
            let inst = apply_scheme(&g, &scheme).unwrap();
            let r = solve_exact(&inst, Budget::unlimited());
            assert_eq!(r.status, SolveStatus::NonHamiltonian, "{scheme:?}");
        }
    }

    #[test]
    fn modified_snark_cycle_uses_the_added_edge() {
        let m = modified_flower_snark(3).unwrap();
        let inst = apply_scheme(&m.graph, &Scheme::resistance()).unwrap();
        let r = solve_exact(&inst, Budget::unlimited());
        assert_eq!(r.status, SolveStatus::Found);
        let cycle = r.cycle.unwrap();
        assert!(verify_cycle(&m.graph, &cycle));
        let (a, b) = m.added_edge.endpoints();
        let uses_added = (0..cycle.len()).any(|i| {
            let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (x, y) == (a, b) || (x, y) == (b, a)
        });
        assert!(uses_added);
    }

    #[test]
    fn disconnected_input_short_circuits() {
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let inst = apply_scheme(&g, &Scheme::unit()).unwrap();
        let r = solve_exact(&inst, Budget::unlimited());
        assert_eq!(r.status, SolveStatus::NonHamiltonian);
        assert_eq!(r.nodes_expanded, 0);
    }

    #[test]
    fn node_budget_is_respected() {
        let g = flower_snark(3).unwrap();
        let inst = apply_scheme(&g, &Scheme::unit()).unwrap();
        let r = solve_exact(&inst, Budget::unlimited().with_max_nodes(10));
        assert_eq!(r.status, SolveStatus::BudgetExhausted);
        assert_eq!(r.nodes_expanded, 10);
    }

    #[test]
    fn deterministic_across_runs() {
        let g = complete_graph(8).unwrap();
        let inst = apply_scheme(&g, &Scheme::random(99)).unwrap();
        let a = solve_exact(&inst, Budget::unlimited());
        let b = solve_exact(&inst, Budget::unlimited());
        assert_eq!(a.status, b.status);
        assert_eq!(a.cycle, b.cycle);
        assert_eq!(a.tour_weight, b.tour_weight);
        assert_eq!(a.nodes_expanded, b.nodes_expanded);
    }

    #[test]
    fn optimal_mode_finds_the_minimum_tour() {
        // K_4 with weights chosen so the three tours cost 4, 12, 12.
        let g = complete_graph(4).unwrap();
        let mut weights = std::collections::BTreeMap::new();
        for (pair, w) in [
            ((0usize, 1usize), 1u64),
            ((0, 2), 5),
            ((0, 3), 1),
            ((1, 2), 1),
            ((2, 3), 1),
            ((1, 3), 5),
        ] {
            weights.insert(crate::graph::EdgeId::new(pair.0, pair.1), w);
        }
        let inst = WeightedInstance::from_weights(g, weights).unwrap();
        let r = solve_exact_optimal(&inst, Budget::unlimited());
        assert_eq!(r.status, SolveStatus::Found);
        assert_eq!(r.tour_weight, Some(4));
        // First-found may stop on a heavier tour; optimal must not.
        let first = solve_exact(&inst, Budget::unlimited());
        assert!(first.tour_weight.unwrap() >= 4);
    }
}
