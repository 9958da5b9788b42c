//! Interchange formats for external TSP solvers.
//!
//! Two exports are offered: an explicit FULL_MATRIX file in the classic
//! `NAME/TYPE/DIMENSION` header style, where non-edges carry an artificial
//! big-M weight, and a sparse `n m` / `u v w` edge list that stays faithful
//! to the instance's sparsity. Both use `\n` line endings, ASCII decimal
//! integers, and 0-indexed vertices in the sparse form; matrix rows start on
//! a fresh line and wrap at ten entries. The contracts are bit-exact so
//! golden-file tests can pin them.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{build_graph, parse_graph, EdgeId, Graph, ParseError};
use crate::weighting::WeightedInstance;

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    FullMatrix,
    SparseEdgeList,
}

/// Options common to both exporters. `big_m` is the full-matrix non-edge
/// weight; when absent it defaults to `n * w_max + 1`, the smallest value
/// that makes every all-real-edge tour cheaper than any tour using a
/// non-edge.
#[derive(Debug, Clone)]
pub struct ExportOptions {
    pub format: ExportFormat,
    pub name: String,
    pub big_m: Option<u64>,
}

impl ExportOptions {
    pub fn new(format: ExportFormat, name: impl Into<String>) -> Self {
        ExportOptions {
            format,
            name: name.into(),
            big_m: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExportError {
    /// External solvers commonly store costs as 32-bit signed integers;
    /// anything larger would overflow silently on their side.
    #[error("weight {value} exceeds the 32-bit signed range")]
    WeightOverflow { value: u64 },
    /// A big-M at or below n * w_max no longer separates real tours from
    /// artificial ones.
    #[error("big_m {big_m} must exceed n * w_max = {required}")]
    BigMTooSmall { big_m: u64, required: u64 },
    #[error("full-matrix export needs at least 3 vertices, got {n}")]
    InstanceTooSmall { n: usize },
}

/// Renders the instance as an explicit symmetric weight matrix with the
/// artificial weight on non-edges. Header, `EDGE_WEIGHT_SECTION`, matrix
/// rows, `EOF`.
pub fn export_full_matrix(
    inst: &WeightedInstance,
    opts: &ExportOptions,
) -> Result<String, ExportError> {
    let g = inst.graph();
    let n = g.order();
    if n < 3 {
        return Err(ExportError::InstanceTooSmall { n });
    }
    let w_max = inst.max_weight();
    let separation = (n as u64).saturating_mul(w_max);
    let big_m = opts.big_m.unwrap_or_else(|| separation.saturating_add(1));
    if big_m <= separation {
        return Err(ExportError::BigMTooSmall {
            big_m,
            required: separation,
        });
    }
    let limit = i32::MAX as u64;
    if big_m > limit {
        return Err(ExportError::WeightOverflow { value: big_m });
    }
    for (_, w) in inst.weights() {
        if w > limit {
            return Err(ExportError::WeightOverflow { value: w });
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "NAME: {}", opts.name);
    let _ = writeln!(out, "TYPE: TSP");
    let _ = writeln!(out, "DIMENSION: {n}");
    let _ = writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT");
    let _ = writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX");
    let _ = writeln!(out, "EDGE_WEIGHT_SECTION");
    for i in 0..n {
        let mut on_line = 0;
        for j in 0..n {
            let w = if i == j {
                0
            } else {
                inst.weight_between(i, j).unwrap_or(big_m)
            };
            if on_line == 10 {
                out.push('\n');
                on_line = 0;
            }
            if on_line > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{w}");
            on_line += 1;
        }
        out.push('\n');
    }
    out.push_str("EOF\n");
    Ok(out)
}

/// Renders the instance as `n m` followed by one `u v w` line per edge,
/// 0-indexed, u < v, ascending lexicographic order.
pub fn export_sparse_edges(inst: &WeightedInstance, _opts: &ExportOptions) -> String {
    let g = inst.graph();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.size());
    for (e, w) in inst.weights() {
        let _ = writeln!(out, "{} {} {}", e.u(), e.v(), w);
    }
    out
}

/// Parses the sparse `n m` / `u v w` format back into a weighted instance.
/// Together with [`export_sparse_edges`] this forms an identity round trip.
pub fn import_sparse_edges(text: &str) -> Result<WeightedInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(ParseError::UnexpectedEof {
        message: "missing 'n m' header".into(),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), line_no, "vertex count")?;
    let m: usize = parse_field(parts.next(), line_no, "edge count")?;
    if parts.next().is_some() {
        return Err(ParseError::Syntax {
            line: line_no,
            message: "expected exactly 'n m'".into(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    let mut weights = std::collections::BTreeMap::new();
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(ParseError::UnexpectedEof {
            message: format!("expected {m} edge lines"),
        })?;
        let mut parts = line.split_whitespace();
        let u: usize = parse_field(parts.next(), line_no, "endpoint")?;
        let v: usize = parse_field(parts.next(), line_no, "endpoint")?;
        let w: u64 = parse_field(parts.next(), line_no, "weight")?;
        if parts.next().is_some() {
            return Err(ParseError::Syntax {
                line: line_no,
                message: "expected exactly 'u v w'".into(),
            });
        }
        if u >= n || v >= n {
            return Err(ParseError::IndexOutOfRange {
                line: line_no,
                vertex: u.max(v),
                n,
            });
        }
        if u == v {
            return Err(ParseError::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        if w == 0 {
            return Err(ParseError::Syntax {
                line: line_no,
                message: "weight must be positive".into(),
            });
        }
        edges.push((u, v));
        weights.insert(EdgeId::new(u, v), w);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::Syntax {
            line: line_no,
            message: "trailing data after edge lines".into(),
        });
    }

    let graph = build_graph(n, &edges).map_err(|e| ParseError::Syntax {
        line: line_no,
        message: e.to_string(),
    })?;
    WeightedInstance::from_weights(graph, weights).map_err(|e| ParseError::Syntax {
        line: line_no,
        message: e.to_string(),
    })
}

/// Parses HCP interchange text into a graph. The format itself lives in the
/// graph parser; this is the module's import entry point.
pub fn import_hcp(text: &str) -> Result<Graph, ParseError> {
    parse_graph(text)
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let raw = field.ok_or_else(|| ParseError::Syntax {
        line,
        message: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("invalid {what}: '{raw}'"),
    })
}
