//! Shared helpers for integration tests: seeded random graphs so every run
//! sees the same sample.

use ohmcycle::graph::{build_graph, Graph};
use ohmcycle::weighting::SplitMix64;

pub fn draw(rng: &mut SplitMix64, bound: usize) -> usize {
    (rng.next_u64() % bound as u64) as usize
}

/// Random graph via independent edge coin flips with probability
/// `p_num / p_den`; may be disconnected or even edgeless.
pub fn random_graph(rng: &mut SplitMix64, n: usize, p_num: u64, p_den: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u64() % p_den < p_num {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges).expect("generated pairs are valid")
}

/// Random connected graph: a random attachment tree plus `extra` random
/// chords (duplicates collapse, so the edge count is approximate).
pub fn random_connected_graph(rng: &mut SplitMix64, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((draw(rng, v), v));
    }
    let mut added = 0;
    while added < extra && n >= 2 {
        let u = draw(rng, n);
        let v = draw(rng, n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
        added += 1;
    }
    build_graph(n, &edges).expect("generated pairs are valid")
}
