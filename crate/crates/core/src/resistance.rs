//! Resistance distances from the graph Laplacian.
//!
//! Every edge is a 1-ohm resistor; `omega(i, j)` is the effective resistance
//! between vertices `i` and `j`. The matrix is computed per connected
//! component from the inverse of `Gamma = L + (1/n) J`, where each component
//! uses its own order for the `1/n` term. Pairs in different components have
//! infinite resistance, represented as a classification (`None`) rather than
//! a float so downstream arithmetic can never absorb it silently.
//!
//! [`effective_resistance`] is a deliberately separate route: it solves the
//! grounded current-balance system `L phi = e_i - e_j` by Gaussian
//! elimination and serves as an independent check on the `Gamma` formula.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{component_labels, Graph};
use crate::matrix::{cholesky, solve_gaussian, DenseMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResistanceError {
    /// The SPD factorization failed. `Gamma` of a connected component is
    /// positive definite by construction, so this signals a bug or a
    /// disconnected input where a connected one was required.
    #[error("symmetric factorization failed; input may be disconnected")]
    NumericalFailure,
    #[error("vertices {i} and {j} lie in different components")]
    DisconnectedPair { i: usize, j: usize },
    #[error("resistance matrix has infinite entries (graph is disconnected)")]
    InfiniteEntries,
}

/// Symmetric matrix of pairwise resistance distances plus the component
/// structure that decides which pairs are finite.
#[derive(Clone, Debug)]
pub struct ResistanceMatrix {
    omega: DenseMatrix,
    component: Vec<usize>,
    num_components: usize,
}

impl ResistanceMatrix {
    pub fn order(&self) -> usize {
        self.omega.n()
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    /// Component label of vertex `v`.
    pub fn component_id(&self, v: usize) -> usize {
        self.component[v]
    }

    /// True iff `i` and `j` lie in the same component.
    pub fn is_finite(&self, i: usize, j: usize) -> bool {
        self.component[i] == self.component[j]
    }

    /// Resistance distance, or `None` for a cross-component pair.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if self.is_finite(i, j) {
            Some(self.omega.get(i, j))
        } else {
            None
        }
    }
}

/// Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let n = g.order();
    let mut l = DenseMatrix::zeros(n);
    for v in 0..n {
        l.set(v, v, g.degree(v) as f64);
        for &w in g.neighbors(v) {
            l.set(v, w, -1.0);
        }
    }
    l
}

/// `Gamma = L + (1/n) J` for the whole graph.
pub fn gamma(g: &Graph) -> DenseMatrix {
    let n = g.order();
    let l = laplacian(g);
    let shift = 1.0 / n as f64;
    DenseMatrix::from_fn(n, |i, j| l.get(i, j) + shift)
}

/// Inverse of `Gamma`, defined for connected graphs (for a disconnected
/// graph `Gamma` is singular and the factorization fails).
pub fn gamma_inverse(g: &Graph) -> Result<DenseMatrix, ResistanceError> {
    let f = cholesky(&gamma(g)).ok_or(ResistanceError::NumericalFailure)?;
    Ok(f.inverse())
}

/// Computes the full resistance-distance matrix, treating each connected
/// component as an individual graph.
pub fn resistance_matrix(g: &Graph) -> Result<ResistanceMatrix, ResistanceError> {
    let n = g.order();
    let component = component_labels(g);
    let num_components = component.iter().copied().max().map_or(0, |c| c + 1);

    // Cross-component entries hold an actual infinity so even a raw dump of
    // the backing matrix cannot be mistaken for finite data; the accessor
    // still gates on component labels.
    let mut omega = DenseMatrix::from_fn(n, |i, j| {
        if component[i] == component[j] {
            0.0
        } else {
            f64::INFINITY
        }
    });

    for c in 0..num_components {
        let verts: Vec<usize> = (0..n).filter(|&v| component[v] == c).collect();
        let nc = verts.len();
        if nc == 1 {
            continue;
        }
        let mut local = vec![usize::MAX; n];
        for (li, &v) in verts.iter().enumerate() {
            local[v] = li;
        }
        // Component Gamma uses the component's own order for the 1/n term.
        let shift = 1.0 / nc as f64;
        let mut gamma_c = DenseMatrix::from_fn(nc, |_, _| shift);
        for (li, &v) in verts.iter().enumerate() {
            gamma_c.set(li, li, g.degree(v) as f64 + shift);
            for &w in g.neighbors(v) {
                let lw = local[w];
                gamma_c.set(li, lw, shift - 1.0);
            }
        }
        let inv = cholesky(&gamma_c)
            .ok_or(ResistanceError::NumericalFailure)?
            .inverse();
        for a in 0..nc {
            for b in (a + 1)..nc {
                let o = inv.get(a, a) + inv.get(b, b) - 2.0 * inv.get(a, b);
                omega.set(verts[a], verts[b], o);
                omega.set(verts[b], verts[a], o);
            }
        }
    }

    Ok(ResistanceMatrix {
        omega,
        component,
        num_components,
    })
}

/// Independent oracle for a single pair: injects one unit of current at `i`,
/// extracts it at `j`, grounds `j`, and solves the Kirchhoff current-balance
/// system on the pair's component. Returns the potential difference.
pub fn effective_resistance(g: &Graph, i: usize, j: usize) -> Result<f64, ResistanceError> {
    let component = component_labels(g);
    if component[i] != component[j] {
        return Err(ResistanceError::DisconnectedPair { i, j });
    }
    if i == j {
        return Ok(0.0);
    }

    let c = component[i];
    let verts: Vec<usize> = (0..g.order()).filter(|&v| component[v] == c).collect();
    let mut local = vec![usize::MAX; g.order()];
    for (li, &v) in verts.iter().enumerate() {
        local[v] = li;
    }

    // Reduced Laplacian: drop the grounded row and column (phi_j = 0).
    let ground = local[j];
    let reduced_index = |li: usize| if li < ground { li } else { li - 1 };
    let nr = verts.len() - 1;
    let mut a = DenseMatrix::zeros(nr);
    for (li, &v) in verts.iter().enumerate() {
        if li == ground {
            continue;
        }
        let ri = reduced_index(li);
        a.set(ri, ri, g.degree(v) as f64);
        for &w in g.neighbors(v) {
            let lw = local[w];
            if lw == ground {
                continue;
            }
            a.set(ri, reduced_index(lw), -1.0);
        }
    }
    let mut b = vec![0.0; nr];
    b[reduced_index(local[i])] = 1.0;

    let x = solve_gaussian(&a, &b).ok_or(ResistanceError::NumericalFailure)?;
    Ok(x[reduced_index(local[i])])
}

/// One half of the sum of all resistance-matrix entries. Only defined when
/// every pair is finite.
pub fn kirchhoff_index(r: &ResistanceMatrix) -> Result<f64, ResistanceError> {
    if r.num_components() > 1 {
        return Err(ResistanceError::InfiniteEntries);
    }
    let n = r.order();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += r.get(i, j).expect("single component");
            }
        }
    }
    Ok(0.5 * sum)
}

/// Row-major CSV dump of the matrix: 12 significant digits, `inf` for
/// cross-component pairs.
pub fn omega_csv(r: &ResistanceMatrix) -> String {
    let n = r.order();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(',');
            }
            match r.get(i, j) {
                Some(v) => {
                    let _ = write!(out, "{v:.11e}");
                }
                None => out.push_str("inf"),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::generators::{complete_graph, cycle_graph, path_graph};

    fn k2() -> Graph {
        build_graph(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn laplacian_of_k2() {
        let l = laplacian(&k2());
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 0), -1.0);
        assert_eq!(l.get(1, 1), 1.0);
    }

    #[test]
    fn laplacian_of_triangle() {
        let l = laplacian(&complete_graph(3).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 2.0 } else { -1.0 };
                assert_eq!(l.get(i, j), expected);
            }
        }
    }

    #[test]
    fn laplacian_of_isolated_vertices_is_zero() {
        let l = laplacian(&build_graph(2, &[]).unwrap());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(l.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap();
        let l = laplacian(&g);
        for i in 0..6 {
            assert!(l.row_sum(i).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_inverse_of_k2_matches_hand_computation() {
        let inv = gamma_inverse(&k2()).unwrap();
        assert!((inv.get(0, 0) - 0.75).abs() < 1e-12);
        assert!((inv.get(1, 1) - 0.75).abs() < 1e-12);
        assert!((inv.get(0, 1) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn resistance_of_k2_is_one() {
        let r = resistance_matrix(&k2()).unwrap();
        assert!((r.get(0, 1).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.get(0, 0), Some(0.0));
    }

    #[test]
    fn resistance_of_c4() {
        // Two parallel paths of d and n-d unit resistors: d(n-d)/n.
        let r = resistance_matrix(&cycle_graph(4).unwrap()).unwrap();
        assert!((r.get(0, 1).unwrap() - 0.75).abs() < 1e-12);
        assert!((r.get(0, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((r.get(1, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_pairs_are_infinite() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        let r = resistance_matrix(&g).unwrap();
        assert!((r.get(0, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((r.get(2, 3).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.get(0, 2), None);
        assert_eq!(r.get(1, 3), None);
        assert!(!r.is_finite(0, 3));
        assert_eq!(r.num_components(), 2);
    }

    #[test]
    fn oracle_matches_closed_forms() {
        assert!((effective_resistance(&k2(), 0, 1).unwrap() - 1.0).abs() < 1e-12);
        // Path endpoints: series resistors sum to n-1.
        let p5 = path_graph(5).unwrap();
        assert!((effective_resistance(&p5, 0, 4).unwrap() - 4.0).abs() < 1e-12);
        // Complete graph: 2/n for any pair.
        for n in 4..=8 {
            let kn = complete_graph(n).unwrap();
            let expected = 2.0 / n as f64;
            assert!((effective_resistance(&kn, 0, n - 1).unwrap() - expected).abs() < 1e-12);
            assert!((effective_resistance(&kn, 1, 2).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_rejects_cross_component_pairs() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            effective_resistance(&g, 0, 2),
            Err(ResistanceError::DisconnectedPair { i: 0, j: 2 })
        );
    }

    #[test]
    fn oracle_agrees_with_gamma_route() {
        let g = build_graph(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 4), (1, 5)],
        )
        .unwrap();
        let r = resistance_matrix(&g).unwrap();
        for i in 0..7 {
            for j in (i + 1)..7 {
                let oracle = effective_resistance(&g, i, j).unwrap();
                assert!((r.get(i, j).unwrap() - oracle).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn kirchhoff_examples() {
        let r = resistance_matrix(&k2()).unwrap();
        assert!((kirchhoff_index(&r).unwrap() - 1.0).abs() < 1e-12);

        // K_4: 6 pairs, each 2/4.
        let r = resistance_matrix(&complete_graph(4).unwrap()).unwrap();
        assert!((kirchhoff_index(&r).unwrap() - 3.0).abs() < 1e-12);

        // C_5: sum over pairs of d(n-d)/n = (n^3 - n)/12 = 10.
        let r = resistance_matrix(&cycle_graph(5).unwrap()).unwrap();
        assert!((kirchhoff_index(&r).unwrap() - 10.0).abs() < 1e-10);
    }

    #[test]
    fn kirchhoff_rejects_disconnected() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        let r = resistance_matrix(&g).unwrap();
        assert_eq!(kirchhoff_index(&r), Err(ResistanceError::InfiniteEntries));
    }

    #[test]
    fn foster_sum_over_edges() {
        // Sum of edge resistances of a connected graph is n - 1.
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)])
            .unwrap();
        let r = resistance_matrix(&g).unwrap();
        let total: f64 = g
            .edges()
            .iter()
            .map(|e| r.get(e.u(), e.v()).unwrap())
            .sum();
        assert!((total - 5.0).abs() < 1e-10);
    }

    #[test]
    fn csv_dump_format() {
        let g = build_graph(3, &[(0, 1)]).unwrap();
        let r = resistance_matrix(&g).unwrap();
        let csv = omega_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "0.00000000000e0,1.00000000000e0,inf");
        assert_eq!(lines[2], "inf,inf,0.00000000000e0");
    }
}
