//! Constructors for the graph families used throughout the toolkit: the
//! flower snarks (hard non-Hamiltonian cubic graphs), their single-edge
//! modification, and the standard path/cycle/complete oracle graphs.

use thiserror::Error;

use crate::graph::{EdgeId, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParam(msg.into())
}

/// Flower snark on `8 + 4k` vertices for odd `k >= 1`.
///
/// The graph is assembled from `t = k + 2` star units. Unit `i` has hub
/// `h_i = 4i` and petals `u_i = 4i+1`, `v_i = 4i+2`, `w_i = 4i+3`. The hubs
/// connect to their three petals, the `u` petals form a `t`-cycle, and the
/// `v`/`w` petals form a single twisted `2t`-cycle closed by the edges
/// `v_{t-1}-w_0` and `w_{t-1}-v_0`. The result is 3-regular with `4t`
/// vertices and `6t` edges.
pub fn flower_snark(k: usize) -> Result<Graph, GeneratorError> {
    if k == 0 || k % 2 == 0 {
        return Err(invalid(format!("flower snark parameter must be odd and >= 1, got {k}")));
    }
    let t = k + 2;
    let hub = |i: usize| 4 * i;
    let u = |i: usize| 4 * i + 1;
    let v = |i: usize| 4 * i + 2;
    let w = |i: usize| 4 * i + 3;

    let mut edges = Vec::with_capacity(6 * t);
    for i in 0..t {
        edges.push((hub(i), u(i)));
        edges.push((hub(i), v(i)));
        edges.push((hub(i), w(i)));
        edges.push((u(i), u((i + 1) % t)));
    }
    for i in 0..t - 1 {
        edges.push((v(i), v(i + 1)));
        edges.push((w(i), w(i + 1)));
    }
    edges.push((v(t - 1), w(0)));
    edges.push((w(t - 1), v(0)));

    Ok(Graph::build(4 * t, &edges).expect("constructed edges are valid"))
}

/// A flower snark plus one edge between two non-adjacent petals of the first
/// star unit. The base graph is maximally non-Hamiltonian, so the result is
/// Hamiltonian and every Hamiltonian cycle must traverse the added edge.
#[derive(Clone, Debug)]
pub struct ModifiedFlowerSnark {
    pub graph: Graph,
    pub added_edge: EdgeId,
}

/// Builds `flower_snark(k)` with the extra edge `(u_0, v_0)`.
pub fn modified_flower_snark(k: usize) -> Result<ModifiedFlowerSnark, GeneratorError> {
    let base = flower_snark(k)?;
    let added = EdgeId::new(1, 2);
    let mut pairs: Vec<(usize, usize)> =
        base.edges().iter().map(|e| e.endpoints()).collect();
    pairs.push(added.endpoints());
    let graph = Graph::build(base.order(), &pairs).expect("constructed edges are valid");
    Ok(ModifiedFlowerSnark {
        graph,
        added_edge: added,
    })
}

/// Path on `n >= 2` vertices.
pub fn path_graph(n: usize) -> Result<Graph, GeneratorError> {
    if n < 2 {
        return Err(invalid(format!("path graph needs n >= 2, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(Graph::build(n, &edges).expect("constructed edges are valid"))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(invalid(format!("cycle graph needs n >= 3, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::build(n, &edges).expect("constructed edges are valid"))
}

/// Complete graph on `n >= 3` vertices.
pub fn complete_graph(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(invalid(format!("complete graph needs n >= 3, got {n}")));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Ok(Graph::build(n, &edges).expect("constructed edges are valid"))
}

/// Hamiltonian cycle count `(k-1)^2 [(k-2)!]^m` of the minimally-Hamiltonian
/// regular family of order `m(k+1)`, for `k >= 5` and `m >= 2`. Instances of
/// the family itself arrive via file ingestion; this evaluates the expected
/// count for cross-checking an enumerator run.
pub fn minimal_regular_hc_count(k: u32, m: u32) -> Result<u128, GeneratorError> {
    if k < 5 {
        return Err(invalid(format!("minimal-regular family needs k >= 5, got {k}")));
    }
    if m < 2 {
        return Err(invalid(format!("minimal-regular family needs m >= 2, got {m}")));
    }
    let factorial = |x: u32| -> Option<u128> {
        (2..=u128::from(x)).try_fold(1u128, |acc, f| acc.checked_mul(f))
    };
    let base = factorial(k - 2).ok_or_else(|| invalid("count overflows u128"))?;
    let mut count = u128::from(k - 1) * u128::from(k - 1);
    for _ in 0..m {
        count = count
            .checked_mul(base)
            .ok_or_else(|| invalid("count overflows u128"))?;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn flower_snark_orders_and_regularity() {
        for k in [1usize, 3, 5] {
            let g = flower_snark(k).unwrap();
            assert_eq!(g.order(), 8 + 4 * k);
            assert_eq!(g.size(), 12 + 6 * k);
            assert!((0..g.order()).all(|v| g.degree(v) == 3));
            assert!(is_connected(&g));
        }
    }

    #[test]
    fn flower_snark_rejects_even_or_zero_k() {
        assert!(flower_snark(0).is_err());
        assert!(flower_snark(2).is_err());
        assert!(flower_snark(4).is_err());
    }

    #[test]
    fn modified_snark_adds_one_edge_between_first_unit_petals() {
        let m = modified_flower_snark(1).unwrap();
        assert_eq!(m.graph.order(), 12);
        assert_eq!(m.graph.size(), 19);
        assert_eq!(m.added_edge.endpoints(), (1, 2));
        let degree_four: Vec<usize> =
            (0..m.graph.order()).filter(|&v| m.graph.degree(v) == 4).collect();
        assert_eq!(degree_four, vec![1, 2]);
    }

    #[test]
    fn removing_added_edge_recovers_base_snark() {
        let m = modified_flower_snark(3).unwrap();
        let pairs: Vec<(usize, usize)> = m
            .graph
            .edges()
            .iter()
            .filter(|e| **e != m.added_edge)
            .map(|e| e.endpoints())
            .collect();
        let stripped = Graph::build(m.graph.order(), &pairs).unwrap();
        assert_eq!(stripped, flower_snark(3).unwrap());
    }

    #[test]
    fn flower_snark_girth_is_at_least_five_for_k3() {
        let g = flower_snark(3).unwrap();
        assert!(girth(&g) >= 5);
    }

    #[test]
    fn oracle_graph_shapes() {
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(c5.size(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));

        let k4 = complete_graph(4).unwrap();
        assert_eq!(k4.size(), 6);

        let p3 = path_graph(3).unwrap();
        assert_eq!(p3.size(), 2);
        let degrees: Vec<usize> = (0..3).map(|v| p3.degree(v)).collect();
        assert_eq!(degrees, vec![1, 2, 1]);
    }

    #[test]
    fn oracle_graph_parameter_bounds() {
        assert!(path_graph(1).is_err());
        assert!(cycle_graph(2).is_err());
        assert!(complete_graph(2).is_err());
    }

    #[test]
    fn minimal_regular_count_formula() {
        // k = 5, m = 2: (k-1)^2 [(k-2)!]^m = 16 * 36 = 576.
        assert_eq!(minimal_regular_hc_count(5, 2).unwrap(), 576);
        // k = 10, m = 2: 81 * 40320^2.
        assert_eq!(
            minimal_regular_hc_count(10, 2).unwrap(),
            81 * 40320u128 * 40320u128
        );
        assert!(minimal_regular_hc_count(4, 2).is_err());
        assert!(minimal_regular_hc_count(5, 1).is_err());
    }

    /// Shortest cycle length via per-vertex BFS.
    fn girth(g: &Graph) -> usize {
        let n = g.order();
        let mut best = usize::MAX;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            dist[start] = 0;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        best
    }
}
