//! Local-search heuristic. The sparse instance is completed with an
//! artificial weight M = n * w_max + 1 on every non-edge, which makes any
//! tour over real edges (cost at most n * w_max) strictly cheaper than any
//! tour touching a single artificial edge. Nearest-neighbor construction
//! followed by 2-opt and Or-opt descent then tries to drive the artificial
//! edges out; success means a Hamiltonian cycle.
//!
//! The heuristic can only ever certify "yes": a local optimum that still
//! uses artificial edges proves nothing, so the result is reported as
//! `BudgetExhausted`, never `NonHamiltonian`.

use std::time::Instant;

use crate::weighting::WeightedInstance;

use super::{Budget, SolveResult, SolveStatus, SolverKind, verify_cycle};

/// Or-opt relocates contiguous segments up to this length.
const OR_OPT_MAX_SEGMENT: usize = 3;

pub fn solve_heuristic(inst: &WeightedInstance, budget: Budget) -> SolveResult {
    let started = Instant::now();
    let g = inst.graph();
    let n = g.order();

    if n < 3 {
        return SolveResult {
            status: SolveStatus::BudgetExhausted,
            cycle: None,
            tour_weight: None,
            nodes_expanded: 0,
            elapsed: started.elapsed(),
            solver: SolverKind::Heuristic,
        };
    }

    let mut ls = LocalSearch::new(inst, budget, started);
    ls.construct_nearest_neighbor();
    ls.descend();

    let status;
    let mut cycle = None;
    let mut tour_weight = None;
    if ls.tour_is_artificial_free() {
        let canonical = canonicalize(&ls.tour);
        debug_assert!(verify_cycle(g, &canonical));
        tour_weight = inst.tour_weight(&canonical);
        debug_assert!(tour_weight.is_some());
        cycle = Some(canonical);
        status = SolveStatus::Found;
    } else {
        status = SolveStatus::BudgetExhausted;
    }
    SolveResult {
        status,
        cycle,
        tour_weight,
        nodes_expanded: ls.moves_evaluated,
        elapsed: started.elapsed(),
        solver: SolverKind::Heuristic,
    }
}

/// Rotates to start at vertex 0 and fixes the direction so the second
/// vertex is smaller than the last, matching the enumerator's canonical
/// form.
fn canonicalize(tour: &[usize]) -> Vec<usize> {
    let n = tour.len();
    let zero = tour.iter().position(|&v| v == 0).expect("0 in tour");
    let mut c: Vec<usize> = (0..n).map(|i| tour[(zero + i) % n]).collect();
    if c[1] > c[n - 1] {
        c[1..].reverse();
    }
    c
}

struct LocalSearch {
    n: usize,
    /// Completed cost matrix, row-major: real weight on edges, M elsewhere.
    cost: Vec<u64>,
    big_m: u64,
    tour: Vec<usize>,
    moves_evaluated: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    out_of_budget: bool,
}

impl LocalSearch {
    fn new(inst: &WeightedInstance, budget: Budget, started: Instant) -> Self {
        let n = inst.graph().order();
        let w_max = inst.max_weight().max(1);
        let big_m = (n as u64).saturating_mul(w_max).saturating_add(1);
        let mut cost = vec![big_m; n * n];
        for i in 0..n {
            cost[i * n + i] = 0;
        }
        for (e, w) in inst.weights() {
            cost[e.u() * n + e.v()] = w;
            cost[e.v() * n + e.u()] = w;
        }
        LocalSearch {
            n,
            cost,
            big_m,
            tour: Vec::new(),
            moves_evaluated: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_time.map(|t| started + t),
            out_of_budget: false,
        }
    }

    fn c(&self, a: usize, b: usize) -> u64 {
        self.cost[a * self.n + b]
    }

    fn construct_nearest_neighbor(&mut self) {
        let n = self.n;
        let mut visited = vec![false; n];
        let mut tour = Vec::with_capacity(n);
        let mut at = 0usize;
        visited[0] = true;
        tour.push(0);
        for _ in 1..n {
            let mut best: Option<(u64, usize)> = None;
            for v in 0..n {
                if !visited[v] {
                    let cand = (self.c(at, v), v);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
            let (_, v) = best.expect("unvisited vertex remains");
            visited[v] = true;
            tour.push(v);
            at = v;
        }
        self.tour = tour;
    }

    /// First-improvement sweeps of 2-opt then Or-opt until a full pass finds
    /// nothing or the budget runs out.
    fn descend(&mut self) {
        loop {
            let improved = self.sweep_two_opt() | self.sweep_or_opt();
            if !improved || self.out_of_budget {
                return;
            }
        }
    }

    /// Charges one evaluated move against the budget; false means stop.
    fn charge(&mut self) -> bool {
        if self.moves_evaluated >= self.max_nodes {
            self.out_of_budget = true;
            return false;
        }
        self.moves_evaluated += 1;
        if self.moves_evaluated % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.out_of_budget = true;
                    return false;
                }
            }
        }
        true
    }

    /// Reverses tour[i+1..=j] when that swaps two tour edges for a strictly
    /// cheaper pair.
    fn sweep_two_opt(&mut self) -> bool {
        let n = self.n;
        let mut improved = false;
        for i in 0..n - 1 {
            for j in i + 1..n {
                if i == 0 && j == n - 1 {
                    // Both removed edges would touch tour[0]: a pure
                    // direction flip, never a gain.
                    continue;
                }
                if !self.charge() {
                    return improved;
                }
                let (a, b) = (self.tour[i], self.tour[i + 1]);
                let (c, d) = (self.tour[j], self.tour[(j + 1) % n]);
                let old = self.c(a, b).saturating_add(self.c(c, d));
                let new = self.c(a, c).saturating_add(self.c(b, d));
                if new < old {
                    self.tour[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        improved
    }

    /// Relocates segments of length 1..=OR_OPT_MAX_SEGMENT (orientation
    /// kept) to a strictly cheaper position.
    fn sweep_or_opt(&mut self) -> bool {
        let n = self.n;
        let mut improved = false;
        for seg_len in 1..=OR_OPT_MAX_SEGMENT.min(n - 2) {
            let mut s = 1;
            while s + seg_len <= n {
                if self.try_relocate(s, seg_len) {
                    improved = true;
                    // Tour changed under this position; rescan it.
                    continue;
                }
                if self.out_of_budget {
                    return improved;
                }
                s += 1;
            }
        }
        improved
    }

    fn try_relocate(&mut self, s: usize, seg_len: usize) -> bool {
        let n = self.n;
        let pre = self.tour[s - 1];
        let first = self.tour[s];
        let last = self.tour[s + seg_len - 1];
        let post = self.tour[(s + seg_len) % n];
        let removal_old = self.c(pre, first).saturating_add(self.c(last, post));
        let bridge = self.c(pre, post);

        let rem_len = n - seg_len;
        for k in 0..rem_len {
            // rem is the tour with the segment cut out; position k inserts
            // between rem[k] and rem[k+1]. k = s-1 recreates the original.
            if k == s - 1 {
                continue;
            }
            if !self.charge() {
                return false;
            }
            let a = self.rem_vertex(k, s, seg_len);
            let b = self.rem_vertex((k + 1) % rem_len, s, seg_len);
            let old = removal_old.saturating_add(self.c(a, b));
            let new = bridge
                .saturating_add(self.c(a, first))
                .saturating_add(self.c(last, b));
            if new < old {
                self.apply_relocate(s, seg_len, k);
                return true;
            }
        }
        false
    }

    /// Vertex at index `k` of the tour with `seg_len` entries removed at `s`.
    fn rem_vertex(&self, k: usize, s: usize, seg_len: usize) -> usize {
        if k < s {
            self.tour[k]
        } else {
            self.tour[k + seg_len]
        }
    }

    fn apply_relocate(&mut self, s: usize, seg_len: usize, k: usize) {
        let seg: Vec<usize> = self.tour[s..s + seg_len].to_vec();
        let mut rem: Vec<usize> = Vec::with_capacity(self.n - seg_len);
        rem.extend_from_slice(&self.tour[..s]);
        rem.extend_from_slice(&self.tour[s + seg_len..]);
        let mut next = Vec::with_capacity(self.n);
        next.extend_from_slice(&rem[..=k]);
        next.extend_from_slice(&seg);
        next.extend_from_slice(&rem[k + 1..]);
        self.tour = next;
    }

    fn tour_is_artificial_free(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| self.c(self.tour[i], self.tour[(i + 1) % n]) < self.big_m)
    }

    #[cfg(test)]
    fn tour_cost(&self) -> u64 {
        (0..self.n)
            .map(|i| self.c(self.tour[i], self.tour[(i + 1) % self.n]))
            .fold(0u64, |acc, w| acc.saturating_add(w))
    }
}
