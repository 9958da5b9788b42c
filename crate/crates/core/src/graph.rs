//! Simple undirected graphs: construction, validation, connectivity, and
//! instance-file parsing.
//!
//! Vertices are `0..n-1`. Graphs are immutable after construction and can be
//! shared freely across worker threads.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// An undirected edge with normalized endpoint order (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    u: usize,
    v: usize,
}

impl EdgeId {
    /// Normalizes `(a, b)` so that `u < v`. Panics on a self-loop; callers
    /// validate endpoints first.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "EdgeId endpoints must differ");
        if a < b {
            EdgeId { u: a, v: b }
        } else {
            EdgeId { u: b, v: a }
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Both endpoints as a `(u, v)` pair with `u < v`.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {vertex} out of range for graph of order {n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
}

/// A simple undirected unweighted graph.
///
/// Invariants: no self-loops, no duplicate edges, adjacency lists sorted and
/// symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeId>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge-pair list. Duplicate pairs
    /// (in either orientation) collapse to a single edge.
    pub fn build(n: usize, edge_pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for &(a, b) in edge_pairs {
            if a >= n {
                return Err(GraphError::IndexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::IndexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            set.insert(EdgeId::new(a, b));
        }
        let edges: Vec<EdgeId> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Vertex count.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges in normalized `(u < v)` lexicographic order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n || b >= self.n {
            return false;
        }
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Canonical edge-list serialization: `n m` header, then one `u v` line
    /// per edge in normalized order.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
        out
    }
}

/// Builds a graph on `n` vertices from an edge-pair list.
pub fn build_graph(n: usize, edge_pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::build(n, edge_pairs)
}

/// Per-vertex connected-component labels. Components are numbered `0, 1, ...`
/// in order of their smallest vertex.
pub fn component_labels(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// True iff the graph has exactly one connected component.
pub fn is_connected(g: &Graph) -> bool {
    if g.order() == 0 {
        return true;
    }
    component_labels(g).iter().all(|&c| c == 0)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex index {vertex} out of range for order {n}")]
    IndexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("unexpected end of input: {message}")]
    UnexpectedEof { message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a graph instance, auto-detecting the canonical edge-list format
/// (`n m` header) or the HCP interchange format (`NAME:`/`DIMENSION:` headers
/// with an `EDGE_DATA_SECTION`).
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    // First non-blank, non-comment line decides the format.
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let looks_numeric = fields.next().is_some_and(|f| f.parse::<usize>().is_ok());
        return if looks_numeric {
            parse_edge_list(text)
        } else {
            parse_hcp(text)
        };
    }
    Err(ParseError::UnexpectedEof {
        message: "empty instance".into(),
    })
}

/// Canonical edge-list format: `n m` header then exactly `m` lines `i j`
/// (0-indexed). Lines starting with `#` are comments.
fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n = 0usize;
    let mut m = 0usize;
    let mut header_seen = false;
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !header_seen {
            if fields.len() != 2 {
                return Err(syntax(lineno, "expected header `n m`"));
            }
            n = fields[0]
                .parse()
                .map_err(|_| syntax(lineno, "invalid vertex count"))?;
            m = fields[1]
                .parse()
                .map_err(|_| syntax(lineno, "invalid edge count"))?;
            header_seen = true;
            continue;
        }
        if pairs.len() == m {
            return Err(syntax(lineno, "trailing data after last edge"));
        }
        if fields.len() != 2 {
            return Err(syntax(lineno, "expected edge line `i j`"));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| syntax(lineno, "invalid vertex index"))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| syntax(lineno, "invalid vertex index"))?;
        for &v in &[i, j] {
            if v >= n {
                return Err(ParseError::IndexOutOfRange {
                    line: lineno,
                    vertex: v,
                    n,
                });
            }
        }
        if i == j {
            return Err(ParseError::SelfLoop {
                line: lineno,
                vertex: i,
            });
        }
        pairs.push((i, j));
    }

    if !header_seen {
        return Err(ParseError::UnexpectedEof {
            message: "missing `n m` header".into(),
        });
    }
    if pairs.len() != m {
        return Err(ParseError::UnexpectedEof {
            message: format!("expected {} edge lines, found {}", m, pairs.len()),
        });
    }
    Ok(Graph::build(n, &pairs).expect("edge pairs validated during parse"))
}

/// HCP interchange format: `KEY: value` headers, `EDGE_DATA_SECTION` with
/// 1-indexed pairs, a `-1` terminator, then `EOF`.
fn parse_hcp(text: &str) -> Result<Graph, ParseError> {
    let mut dimension: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut in_section = false;
    let mut terminated = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !in_section {
            if let Some((key, value)) = line.split_once(':') {
                let key = key.trim().to_ascii_uppercase();
                let value = value.trim();
                match key.as_str() {
                    "DIMENSION" => {
                        dimension = Some(
                            value
                                .parse()
                                .map_err(|_| syntax(lineno, "invalid DIMENSION"))?,
                        );
                    }
                    "EDGE_DATA_FORMAT" => {
                        if !value.eq_ignore_ascii_case("EDGE_LIST") {
                            return Err(syntax(
                                lineno,
                                format!("unsupported EDGE_DATA_FORMAT `{value}`"),
                            ));
                        }
                    }
                    // NAME, TYPE, COMMENT and friends carry no structure we need.
                    _ => {}
                }
            } else if line.eq_ignore_ascii_case("EDGE_DATA_SECTION") {
                if dimension.is_none() {
                    return Err(syntax(lineno, "EDGE_DATA_SECTION before DIMENSION"));
                }
                in_section = true;
            } else if line.eq_ignore_ascii_case("EOF") {
                break;
            } else {
                return Err(syntax(lineno, format!("unrecognized header line `{line}`")));
            }
            continue;
        }
        if line == "-1" {
            terminated = true;
            in_section = false;
            continue;
        }
        if line.eq_ignore_ascii_case("EOF") {
            // Reserved token, never an edge line: the section was cut off.
            break;
        }
        let n = dimension.expect("checked before entering section");
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(syntax(lineno, "expected edge line `u v`"));
        }
        let mut pair = [0usize; 2];
        for (slot, f) in pair.iter_mut().zip(&fields) {
            let id: usize = f
                .parse()
                .map_err(|_| syntax(lineno, "invalid vertex id"))?;
            // Interchange ids are 1-based.
            if id == 0 || id > n {
                return Err(ParseError::IndexOutOfRange {
                    line: lineno,
                    vertex: id,
                    n,
                });
            }
            *slot = id - 1;
        }
        if pair[0] == pair[1] {
            return Err(ParseError::SelfLoop {
                line: lineno,
                vertex: pair[0],
            });
        }
        pairs.push((pair[0], pair[1]));
    }

    let n = dimension.ok_or_else(|| ParseError::UnexpectedEof {
        message: "missing DIMENSION header".into(),
    })?;
    if !terminated {
        return Err(ParseError::UnexpectedEof {
            message: "EDGE_DATA_SECTION missing `-1` terminator".into(),
        });
    }
    Ok(Graph::build(n, &pairs).expect("edge pairs validated during parse"))
}
